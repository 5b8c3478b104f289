//! Impartial game forms with the pass operator and the split sum.
//!
//! Games live in an [`Arena`] that interns every form by its option set, so
//! two forms are equivalent (identical option sets, recursively) exactly
//! when their [`GameId`]s are equal. Values (Grundy numbers) are computed by
//! a separate [`Solver`] that memoizes over the arena.
//!
//! [`nim_pass`] is a specialized solver for Nim with a pass that never
//! touches the arena, and [`verify`] mechanically checks the algebraic laws
//! of the split sum over exhaustive and random families of forms.

mod error;
pub mod expr;
mod game;
pub mod nim_pass;
mod ops;
pub mod report;
mod solver;
pub mod verify;

pub use error::GameError;
pub use game::{Arena, GameId, Limits, DEFAULT_MAX_NODES};
pub use solver::{mex, Outcome, Solver};
