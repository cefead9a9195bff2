use std::collections::{BTreeMap, VecDeque};

use super::{Graph, GraphError, Vertex};

/// Residual network with unit capacities, stored as paired arcs.
struct Network {
    head: Vec<usize>,
    cap: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, from: usize, to: usize) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(1);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    if y == sink {
                        let mut node = sink;
                        while node != source {
                            let arc = via[node];
                            self.cap[arc] -= 1;
                            self.cap[arc ^ 1] += 1;
                            node = self.head[arc ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
            }
        }
        false
    }
}

/// Number of internally vertex-disjoint `u`-`v` paths, capped at `cap`.
///
/// Unit-capacity max-flow on the vertex-split network; augmentation stops as
/// soon as `cap` paths are found. A direct edge `{u, v}` counts as one path.
pub fn count_disjoint_paths(g: &Graph, u: Vertex, v: Vertex, cap: usize) -> Result<usize, GraphError> {
    g.try_neighbors(u)?;
    g.try_neighbors(v)?;
    assert_ne!(u, v, "endpoints must differ");
    let index: BTreeMap<Vertex, usize> = g.vertices().enumerate().map(|(i, x)| (x, i)).collect();
    let n = index.len();
    // node 2i is x_in, 2i+1 is x_out
    let mut net = Network::new(2 * n);
    for (&x, &i) in &index {
        if x != u && x != v {
            net.arc(2 * i, 2 * i + 1);
        }
    }
    for (a, b) in g.edges() {
        let (ia, ib) = (index[&a], index[&b]);
        net.arc(2 * ia + 1, 2 * ib);
        net.arc(2 * ib + 1, 2 * ia);
    }
    let source = 2 * index[&u] + 1;
    let sink = 2 * index[&v];
    let mut paths = 0;
    while paths < cap && net.augment(source, sink) {
        paths += 1;
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(count_disjoint_paths(&Graph::cycle(4), 0, 2, 10).unwrap(), 2);
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(count_disjoint_paths(&k33, 0, 1, 10).unwrap(), 3);
        assert_eq!(count_disjoint_paths(&Graph::path(5), 0, 4, 10).unwrap(), 1);
    }

    #[test]
    fn cap_stops_early_and_adjacent_pair_counts_the_edge() {
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(count_disjoint_paths(&k33, 0, 1, 2).unwrap(), 2);
        // K4: direct edge plus two paths through the other vertices.
        assert_eq!(count_disjoint_paths(&Graph::complete(4), 0, 1, 10).unwrap(), 3);
        assert_eq!(count_disjoint_paths(&Graph::empty(2), 0, 1, 10).unwrap(), 0);
    }

    #[test]
    fn unknown_vertex() {
        assert_eq!(count_disjoint_paths(&Graph::path(2), 0, 5, 1), Err(GraphError::UnknownVertex(5)));
    }
}
