use thiserror::Error;

use crate::GameId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("unknown game id {0}")]
    UnknownId(GameId),
    #[error("resource limit exceeded: {what} would exceed {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },
}
