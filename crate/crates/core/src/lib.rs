//! Mechanism engine for liquid-democracy consensus routing with
//! diffusion-based competence signaling.
//!
//! Agents on an undirected communication graph delegate votes to neighbors
//! they believe more competent, the resulting delegation forests are joined
//! into cross-task routing paths, and the winning path's critical chain is
//! paid its marginal contribution. Agents influence future delegation by
//! privately diffusing competence claims to neighbors.
//!
//! The crate is `no_std` (alloc required). IO, file formats and the CLI
//! live in the companion `agora` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bridge;
pub mod error;
pub mod ledger;
pub mod model;
pub mod routing;
pub mod settlement;
pub mod sim;
pub mod strategy;
pub mod sweep;
pub mod verify;

pub use error::{EngineError, LedgerError, StrategyError, ValidationError};
pub use ledger::{ActionSet, DelegationForest};
pub use model::{
    AgentId, AgentSpec, CompetenceVector, DelegationAction, DiffusionState, Graph, GraphConfig,
    Observation, PayoffHistory, Request, TaskId,
};
pub use routing::RoutePath;
pub use settlement::{ScalingFn, SettleParams, SettlementReport};
pub use sim::{MetricsSeries, SimulationParameters};
pub use strategy::StrategyParams;
