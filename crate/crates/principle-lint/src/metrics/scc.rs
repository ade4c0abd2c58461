//! Tarjan's strongly connected components over [`Digraph`], iterative so deep
//! dependency chains cannot overflow the stack.

use crate::graph::Digraph;

/// Partitions the graph into strongly connected components. Every node lands
/// in exactly one component; components and their members are sorted, and the
/// component list is ordered by smallest member.
pub fn strongly_connected_components<N: Ord + Clone>(graph: &Digraph<N>) -> Vec<Vec<N>> {
    let (nodes, adjacency) = graph.dense();
    let n = nodes.len();

    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<usize>> = Vec::new();

    // Explicit DFS frames: (node, position in its adjacency list).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos < adjacency[v].len() {
                let w = adjacency[v][*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }

    let mut result: Vec<Vec<N>> = components
        .into_iter()
        .map(|component| {
            let mut members: Vec<N> = component.into_iter().map(|i| nodes[i].clone()).collect();
            members.sort();
            members
        })
        .collect();
    result.sort_by(|a, b| a[0].cmp(&b[0]));
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_of(edges: &[(u32, u32)], nodes: &[u32]) -> Digraph<u32> {
        let mut graph = Digraph::new();
        for &node in nodes {
            graph.add_node(node);
        }
        for &(from, to) in edges {
            graph.add_edge(from, to);
        }
        graph
    }

    #[test]
    fn dag_yields_singletons() {
        let graph = graph_of(&[(1, 2), (2, 3)], &[]);
        assert_eq!(strongly_connected_components(&graph), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn two_cycle_is_one_component() {
        let graph = graph_of(&[(1, 2), (2, 1)], &[3]);
        assert_eq!(strongly_connected_components(&graph), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn output_is_a_partition() {
        let graph = graph_of(&[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 4)], &[6]);
        let components = strongly_connected_components(&graph);
        let mut all: Vec<u32> = components.iter().flatten().copied().collect();
        all.sort();
        assert_eq!(all, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(components, vec![vec![1, 2, 3], vec![4, 5], vec![6]]);
    }
}
