//! Minimal directed-graph container shared by the model (package dependency
//! graph) and the metrics layer (SCC computation).

use std::collections::{BTreeMap, BTreeSet};

/// A directed graph over ordered node values. Nodes and edges are kept in
/// sorted containers so iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph<N: Ord + Clone> {
    adjacency: BTreeMap<N, BTreeSet<N>>,
}

impl<N: Ord + Clone> Digraph<N> {
    pub fn new() -> Self {
        Digraph { adjacency: BTreeMap::new() }
    }

    pub fn add_node(&mut self, node: N) {
        self.adjacency.entry(node).or_default();
    }

    /// Adds an edge, inserting both endpoints as nodes.
    pub fn add_edge(&mut self, from: N, to: N) {
        self.add_node(to.clone());
        self.adjacency.entry(from).or_default().insert(to);
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &N> {
        self.adjacency.keys()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&N, &N)> {
        self.adjacency.iter().flat_map(|(from, tos)| tos.iter().map(move |to| (from, to)))
    }

    pub fn has_edge(&self, from: &N, to: &N) -> bool {
        self.adjacency.get(from).is_some_and(|tos| tos.contains(to))
    }

    pub fn successors(&self, node: &N) -> impl Iterator<Item = &N> {
        self.adjacency.get(node).into_iter().flatten()
    }

    /// Adjacency lists over dense indices, with the sorted node list. Used by
    /// the SCC algorithm.
    pub fn dense(&self) -> (Vec<N>, Vec<Vec<usize>>) {
        let nodes: Vec<N> = self.adjacency.keys().cloned().collect();
        let index: BTreeMap<&N, usize> = nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut dense = vec![Vec::new(); nodes.len()];
        for (from, tos) in &self.adjacency {
            for to in tos {
                dense[index[from]].push(index[to]);
            }
        }
        (nodes, dense)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successors_are_sorted_and_scoped() {
        let mut graph = Digraph::new();
        graph.add_edge(2, 3);
        graph.add_edge(2, 1);
        graph.add_edge(1, 2);
        graph.add_node(7);
        assert_eq!(graph.successors(&2).collect::<Vec<_>>(), vec![&1, &3]);
        assert_eq!(graph.successors(&7).count(), 0);
        assert_eq!(graph.node_count(), 4);
        assert_eq!(graph.edge_count(), 3);
    }
}
