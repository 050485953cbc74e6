//! Domain types: agents, tasks, competence vectors, the communication
//! graph, and the diffusion state observed by agents.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ValidationError;

/// Identifier of an agent node. Unique within a graph, stable across rounds.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct AgentId(pub u32);

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identifier of a task class.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct TaskId(pub u32);

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-task capability levels in `[0, 1]`. A missing task means level 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct CompetenceVector {
    entries: BTreeMap<TaskId, f64>,
}

impl CompetenceVector {
    pub fn new() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = (TaskId, f64)>>(entries: I) -> Self {
        Self {
            entries: entries.into_iter().collect(),
        }
    }

    /// Level on `task`; missing entries read as 0.
    pub fn get(&self, task: TaskId) -> f64 {
        self.entries.get(&task).copied().unwrap_or(0.0)
    }

    /// Sets the level on `task`, clamped into `[0, 1]`.
    pub fn set(&mut self, task: TaskId, level: f64) {
        self.entries.insert(task, level.clamp(0.0, 1.0));
    }

    pub fn iter(&self) -> impl Iterator<Item = (TaskId, f64)> + '_ {
        self.entries.iter().map(|(t, v)| (*t, *v))
    }

    pub fn tasks(&self) -> impl Iterator<Item = TaskId> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges `other` into `self`, overwriting only the tasks it carries.
    pub fn merge_from(&mut self, other: &CompetenceVector) {
        for (task, value) in other.iter() {
            self.entries.insert(task, value);
        }
    }

    fn check_range(&self, agent: AgentId) -> Result<(), ValidationError> {
        for (task, value) in self.iter() {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(ValidationError::CompetenceOutOfRange { agent, task, value });
            }
        }
        Ok(())
    }
}

/// Static description of one agent as it appears in a config file.
///
/// `declared_primary` is carried verbatim from the config and never
/// reconciled against the competence vector; the task an agent actually
/// acts on for a given request is derived from capability (see
/// [`Graph::vote_task`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub id: AgentId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_primary: Option<TaskId>,
    pub intrinsic: CompetenceVector,
}

/// Raw graph configuration: agents plus undirected communication edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct GraphConfig {
    pub agents: Vec<AgentSpec>,
    pub edges: Vec<(AgentId, AgentId)>,
}

impl GraphConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_agent(
        &mut self,
        id: u32,
        declared_primary: Option<u32>,
        intrinsic: &[(u32, f64)],
    ) -> &mut Self {
        self.agents.push(AgentSpec {
            id: AgentId(id),
            declared_primary: declared_primary.map(TaskId),
            intrinsic: CompetenceVector::from_entries(
                intrinsic.iter().map(|(t, v)| (TaskId(*t), *v)),
            ),
        });
        self
    }

    pub fn push_edge(&mut self, a: u32, b: u32) -> &mut Self {
        self.edges.push((AgentId(a), AgentId(b)));
        self
    }
}

/// An ordered multi-task request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Request(Vec<TaskId>);

impl Request {
    pub fn new(tasks: Vec<TaskId>) -> Self {
        Self(tasks)
    }

    pub fn of(ids: &[u32]) -> Self {
        Self(ids.iter().map(|t| TaskId(*t)).collect())
    }

    pub fn tasks(&self) -> &[TaskId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, task: TaskId) -> bool {
        self.0.contains(&task)
    }
}

/// Validated graph with neighbor tables and capability communities built.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    agents: BTreeMap<AgentId, AgentSpec>,
    edges: BTreeSet<(AgentId, AgentId)>,
    neighbors: BTreeMap<AgentId, BTreeSet<AgentId>>,
    /// For each task, the set of agents with nonzero competence on it.
    communities: BTreeMap<TaskId, BTreeSet<AgentId>>,
}

/// Validates all `GraphConfig` invariants and builds lookup tables.
pub fn validate_config(config: GraphConfig) -> Result<Graph, ValidationError> {
    if config.agents.is_empty() {
        return Err(ValidationError::Empty);
    }
    let mut agents = BTreeMap::new();
    for spec in config.agents {
        spec.intrinsic.check_range(spec.id)?;
        if agents.insert(spec.id, spec.clone()).is_some() {
            return Err(ValidationError::DuplicateId(spec.id));
        }
    }
    let mut edges = BTreeSet::new();
    let mut neighbors: BTreeMap<AgentId, BTreeSet<AgentId>> =
        agents.keys().map(|id| (*id, BTreeSet::new())).collect();
    for (a, b) in config.edges {
        if a == b {
            return Err(ValidationError::SelfLoop(a));
        }
        for end in [a, b] {
            if !agents.contains_key(&end) {
                return Err(ValidationError::UnknownEndpoint(a, b, end));
            }
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        edges.insert((lo, hi));
        neighbors.get_mut(&a).unwrap().insert(b);
        neighbors.get_mut(&b).unwrap().insert(a);
    }
    let mut communities: BTreeMap<TaskId, BTreeSet<AgentId>> = BTreeMap::new();
    for (id, spec) in &agents {
        for (task, level) in spec.intrinsic.iter() {
            if level > 0.0 {
                communities.entry(task).or_default().insert(*id);
            }
        }
    }
    Ok(Graph {
        agents,
        edges,
        neighbors,
        communities,
    })
}

impl Graph {
    pub fn agent(&self, id: AgentId) -> Option<&AgentSpec> {
        self.agents.get(&id)
    }

    pub fn agents(&self) -> impl Iterator<Item = &AgentSpec> {
        self.agents.values()
    }

    pub fn agent_ids(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.agents.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn neighbors(&self, id: AgentId) -> &BTreeSet<AgentId> {
        static EMPTY: BTreeSet<AgentId> = BTreeSet::new();
        self.neighbors.get(&id).unwrap_or(&EMPTY)
    }

    pub fn has_edge(&self, a: AgentId, b: AgentId) -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&(lo, hi))
    }

    pub fn edges(&self) -> impl Iterator<Item = (AgentId, AgentId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn intrinsic(&self, id: AgentId, task: TaskId) -> f64 {
        self.agents
            .get(&id)
            .map(|a| a.intrinsic.get(task))
            .unwrap_or(0.0)
    }

    /// True if the agent has nonzero competence on `task`.
    pub fn capable(&self, id: AgentId, task: TaskId) -> bool {
        self.intrinsic(id, task) > 0.0
    }

    /// Agents with nonzero competence on `task`.
    pub fn community(&self, task: TaskId) -> &BTreeSet<AgentId> {
        static EMPTY: BTreeSet<AgentId> = BTreeSet::new();
        self.communities.get(&task).unwrap_or(&EMPTY)
    }

    /// All tasks any agent is capable of, ascending.
    pub fn tasks(&self) -> Vec<TaskId> {
        self.communities.keys().copied().collect()
    }

    /// An edge is intra-task for `task` iff both endpoints are capable of it.
    /// Delegation on `task` is restricted to such edges.
    pub fn intra_edge(&self, a: AgentId, b: AgentId, task: TaskId) -> bool {
        self.has_edge(a, b) && self.capable(a, task) && self.capable(b, task)
    }

    /// Same-task neighbors of `id` for `task`.
    pub fn intra_neighbors(&self, id: AgentId, task: TaskId) -> impl Iterator<Item = AgentId> + '_ {
        let capable = self.capable(id, task);
        self.neighbors(id)
            .iter()
            .copied()
            .filter(move |n| capable && self.capable(*n, task))
    }

    /// The task game an agent casts its vote in for a given request: the
    /// request task it is most competent at (ties to the lowest task id).
    /// `None` if it is capable of no request task.
    pub fn vote_task(&self, id: AgentId, request: &Request) -> Option<TaskId> {
        let spec = self.agents.get(&id)?;
        let mut best: Option<(TaskId, f64)> = None;
        let mut seen = BTreeSet::new();
        for task in request.tasks() {
            if !seen.insert(*task) {
                continue;
            }
            let level = spec.intrinsic.get(*task);
            if level <= 0.0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((t, b)) => level > b || (level == b && *task < t),
            };
            if better {
                best = Some((*task, level));
            }
        }
        best.map(|(t, _)| t)
    }

    /// The request spanning every task seen in the graph, ascending.
    pub fn full_request(&self) -> Request {
        Request::new(self.tasks())
    }
}

/// A record of one diffusion event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffusionRecord {
    pub round: u32,
    pub sender: AgentId,
    pub receiver: AgentId,
    pub signal: CompetenceVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

/// Latest diffused signals per ordered (sender, receiver) pair, plus the
/// append-only log. A diffused value persists until overwritten: signals
/// merge per task component, so not diffusing preserves the prior value.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DiffusionState {
    latest: BTreeMap<(AgentId, AgentId), CompetenceVector>,
    log: Vec<DiffusionRecord>,
}

impl DiffusionState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(
        &mut self,
        round: u32,
        sender: AgentId,
        receiver: AgentId,
        signal: CompetenceVector,
        message: Option<String>,
    ) {
        self.latest
            .entry((sender, receiver))
            .or_default()
            .merge_from(&signal);
        self.log.push(DiffusionRecord {
            round,
            sender,
            receiver,
            signal,
            message,
        });
    }

    /// Latest merged signal vector from `sender` to `receiver`.
    pub fn latest(&self, sender: AgentId, receiver: AgentId) -> Option<&CompetenceVector> {
        self.latest.get(&(sender, receiver))
    }

    /// Latest diffused level from `sender` to `receiver` on `task`, if any
    /// signal covering that task was ever sent.
    pub fn latest_value(&self, sender: AgentId, receiver: AgentId, task: TaskId) -> Option<f64> {
        self.latest
            .get(&(sender, receiver))
            .and_then(|v| v.iter().find(|(t, _)| *t == task).map(|(_, val)| val))
    }

    pub fn log(&self) -> &[DiffusionRecord] {
        &self.log
    }

    /// Signals logged for `receiver` during `round`.
    pub fn incoming_in_round(&self, receiver: AgentId, round: u32) -> Vec<&DiffusionRecord> {
        self.log
            .iter()
            .filter(|r| r.receiver == receiver && r.round == round)
            .collect()
    }
}

/// One agent's round submission to the ledger.
///
/// `task` names the task game the vote is cast in; the reported vector may
/// cover every request task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelegationAction {
    pub agent: AgentId,
    pub task: TaskId,
    pub reported: CompetenceVector,
    pub vote: AgentId,
    pub declared_neighbors: BTreeSet<AgentId>,
}

impl DelegationAction {
    pub fn self_vote(agent: AgentId, task: TaskId, reported: CompetenceVector) -> Self {
        Self {
            agent,
            task,
            reported,
            vote: agent,
            declared_neighbors: BTreeSet::new(),
        }
    }
}

/// Realized total payoffs of one agent, one entry per completed round.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PayoffHistory(pub Vec<f64>);

impl PayoffHistory {
    pub fn push(&mut self, payoff: f64) {
        self.0.push(payoff);
    }

    pub fn last(&self) -> Option<f64> {
        self.0.last().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The private observation one agent receives after a round settles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub payoff: f64,
    pub incoming: Vec<(AgentId, CompetenceVector, Option<String>)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> GraphConfig {
        let mut c = GraphConfig::new();
        c.push_agent(1, Some(1), &[(1, 0.7)]);
        c.push_agent(2, Some(1), &[(1, 0.3)]);
        c.push_agent(3, Some(1), &[(1, 0.5)]);
        c.push_edge(1, 2);
        c.push_edge(2, 3);
        c
    }

    /// The 14-node three-community config used throughout the docs.
    pub(crate) fn fixture_d1() -> GraphConfig {
        let mut c = GraphConfig::new();
        c.push_agent(1, Some(1), &[(1, 0.7), (2, 0.0), (3, 0.0)]);
        c.push_agent(2, Some(1), &[(1, 0.7), (2, 0.0), (3, 0.0)]);
        c.push_agent(3, Some(1), &[(1, 0.6), (2, 0.0), (3, 0.0)]);
        c.push_agent(4, Some(1), &[(1, 0.0), (2, 0.4), (3, 0.0)]);
        c.push_agent(5, Some(1), &[(1, 0.0), (2, 0.5), (3, 0.0)]);
        c.push_agent(6, Some(1), &[(1, 0.0), (2, 0.4), (3, 0.0)]);
        c.push_agent(7, Some(1), &[(1, 0.0), (2, 0.6), (3, 0.0)]);
        c.push_agent(8, Some(1), &[(1, 0.0), (2, 0.6), (3, 0.0)]);
        c.push_agent(9, Some(1), &[(1, 0.0), (2, 0.5), (3, 0.0)]);
        c.push_agent(10, Some(2), &[(1, 0.0), (2, 0.9), (3, 0.0)]);
        c.push_agent(11, Some(2), &[(1, 0.0), (2, 0.7), (3, 0.0)]);
        c.push_agent(12, Some(2), &[(1, 0.0), (2, 0.6), (3, 0.0)]);
        c.push_agent(13, Some(2), &[(1, 0.0), (2, 0.6), (3, 0.0)]);
        c.push_agent(14, Some(3), &[(1, 0.0), (2, 0.0), (3, 0.5)]);
        for (a, b) in [
            (1, 4),
            (2, 6),
            (3, 7),
            (4, 8),
            (5, 6),
            (6, 11),
            (8, 9),
            (9, 10),
            (10, 11),
            (11, 12),
            (11, 13),
            (8, 14),
            (11, 14),
            (7, 14),
        ] {
            c.push_edge(a, b);
        }
        c
    }

    #[test]
    fn validates_fixture_d1_and_builds_neighbors() {
        let g = validate_config(fixture_d1()).unwrap();
        let nbrs: Vec<u32> = g.neighbors(AgentId(11)).iter().map(|a| a.0).collect();
        assert_eq!(nbrs, vec![6, 10, 12, 13, 14]);
    }

    #[test]
    fn accepts_single_node_no_edges() {
        let mut c = GraphConfig::new();
        c.push_agent(1, None, &[(1, 0.5)]);
        let g = validate_config(c).unwrap();
        assert!(g.neighbors(AgentId(1)).is_empty());
    }

    #[test]
    fn rejects_unknown_endpoint() {
        let mut c = toy();
        c.push_edge(1, 99);
        let err = validate_config(c).unwrap_err();
        assert_eq!(
            err,
            ValidationError::UnknownEndpoint(AgentId(1), AgentId(99), AgentId(99))
        );
    }

    #[test]
    fn rejects_self_loop_duplicate_and_range() {
        let mut c = toy();
        c.push_edge(2, 2);
        assert_eq!(
            validate_config(c).unwrap_err(),
            ValidationError::SelfLoop(AgentId(2))
        );

        let mut c = toy();
        c.push_agent(1, None, &[(1, 0.1)]);
        assert_eq!(
            validate_config(c).unwrap_err(),
            ValidationError::DuplicateId(AgentId(1))
        );

        let mut c = toy();
        c.push_agent(4, None, &[(1, 1.5)]);
        assert!(matches!(
            validate_config(c).unwrap_err(),
            ValidationError::CompetenceOutOfRange { .. }
        ));
    }

    #[test]
    fn neighbor_relation_is_symmetric() {
        let g = validate_config(fixture_d1()).unwrap();
        for a in g.agent_ids() {
            for b in g.neighbors(a).iter() {
                assert!(g.neighbors(*b).contains(&a), "{a} in nbrs({b})");
            }
        }
    }

    #[test]
    fn diffusion_persistence_and_merge() {
        let mut d = DiffusionState::new();
        let sig = |t: u32, v: f64| CompetenceVector::from_entries([(TaskId(t), v)]);
        d.record(1, AgentId(2), AgentId(1), sig(1, 0.4), None);
        d.record(2, AgentId(2), AgentId(1), sig(2, 0.9), None);
        // the task-1 value survives a later signal that covers only task 2
        assert_eq!(d.latest_value(AgentId(2), AgentId(1), TaskId(1)), Some(0.4));
        assert_eq!(d.latest_value(AgentId(2), AgentId(1), TaskId(2)), Some(0.9));
        d.record(5, AgentId(2), AgentId(1), sig(1, 0.6), None);
        assert_eq!(d.latest_value(AgentId(2), AgentId(1), TaskId(1)), Some(0.6));
        assert_eq!(d.log().len(), 3);
    }

    #[test]
    fn vote_task_prefers_strongest_request_task() {
        let g = validate_config(fixture_d1()).unwrap();
        let req = Request::of(&[1, 2, 3]);
        // declared_primary says task 1, capability says task 2
        assert_eq!(g.vote_task(AgentId(9), &req), Some(TaskId(2)));
        assert_eq!(g.vote_task(AgentId(1), &req), Some(TaskId(1)));
        assert_eq!(g.vote_task(AgentId(14), &req), Some(TaskId(3)));
        // not capable of any requested task
        assert_eq!(g.vote_task(AgentId(14), &Request::of(&[1, 2])), None);
    }
}
