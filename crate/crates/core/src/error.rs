//! Error types shared across the engine.

use alloc::string::String;
use thiserror::Error;

use crate::model::{AgentId, TaskId};

/// Raised while validating a graph configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("duplicate agent id {0}")]
    DuplicateId(AgentId),
    #[error("edge ({0}, {1}) references unknown endpoint {2}")]
    UnknownEndpoint(AgentId, AgentId, AgentId),
    #[error("self-loop on agent {0}")]
    SelfLoop(AgentId),
    #[error("competence {value} for agent {agent} on task {task} outside [0, 1]")]
    CompetenceOutOfRange {
        agent: AgentId,
        task: TaskId,
        value: f64,
    },
    #[error("graph has no agents")]
    Empty,
}

/// Raised while collecting or resolving delegation actions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LedgerError {
    #[error("action from unknown agent {0}")]
    UnknownAgent(AgentId),
    #[error("two actions from agent {0}")]
    DuplicateAction(AgentId),
    #[error("vote target {target} is not in declared neighbors of agent {agent}")]
    UndeclaredVote { agent: AgentId, target: AgentId },
}

/// Raised by strategy parameter validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StrategyError {
    #[error("{0} must be strictly positive")]
    NonPositive(&'static str),
    #[error("epsilon {epsilon} exceeds delta {delta}")]
    EpsilonAboveDelta { epsilon: f64, delta: f64 },
    #[error("scaling function is not monotone with f(0) = 0: {0}")]
    BadScaling(String),
}

/// Engine-level invariant failures and propagated component errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("critical set for task {task} is not a contiguous vote chain: {detail}")]
    NonContiguousCriticalSet { task: TaskId, detail: String },
    #[error("{0}")]
    Invariant(String),
}
