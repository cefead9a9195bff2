use std::collections::BTreeMap;

use super::{Graph, GraphError, Vertex, VertexSet};

/// A graph with a positive integer weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: BTreeMap<Vertex, u64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: BTreeMap<Vertex, u64>) -> Result<Self, GraphError> {
        for v in graph.vertices() {
            match weights.get(&v) {
                None => return Err(GraphError::MissingWeight(v)),
                Some(0) => return Err(GraphError::NonPositiveWeight(v)),
                Some(_) => {}
            }
        }
        if let Some(&v) = weights.keys().find(|v| !graph.contains(**v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = graph.vertices().map(|v| (v, 1)).collect();
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weight(&self, v: Vertex) -> u64 {
        self.weights[&v]
    }

    pub fn weights(&self) -> &BTreeMap<Vertex, u64> {
        &self.weights
    }

    pub fn set_weight(&self, set: &VertexSet) -> u64 {
        set.iter().map(|v| self.weights[v]).sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_missing_weights() {
        let g = Graph::path(2);
        assert_eq!(WeightedGraph::new(g.clone(), [(0, 1)].into()), Err(GraphError::MissingWeight(1)));
        assert_eq!(WeightedGraph::new(g.clone(), [(0, 1), (1, 0)].into()), Err(GraphError::NonPositiveWeight(1)));
        assert_eq!(WeightedGraph::new(g, [(0, 1), (1, 1), (4, 2)].into()), Err(GraphError::UnknownVertex(4)));
    }
}
