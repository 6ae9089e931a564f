//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph {
            n_left,
            n_right,
            adj: vec![Vec::new(); n_left],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n_left && v < self.n_right);
        self.adj[u].push(v);
    }

    /// Size of a maximum matching.
    pub fn max_matching(&self) -> usize {
        let mut match_l = vec![NIL; self.n_left];
        let mut match_r = vec![NIL; self.n_right];
        let mut dist = vec![0usize; self.n_left];
        let mut size = 0;
        while self.bfs(&match_l, &match_r, &mut dist) {
            for u in 0..self.n_left {
                if match_l[u] == NIL && self.dfs(u, &mut match_l, &mut match_r, &mut dist) {
                    size += 1;
                }
            }
        }
        size
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.n_left == self.n_right && self.max_matching() == self.n_left
    }

    fn bfs(&self, match_l: &[usize], match_r: &[usize], dist: &mut [usize]) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.n_left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(
        &self,
        u: usize,
        match_l: &mut [usize],
        match_r: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for i in 0..self.adj[u].len() {
            let v = self.adj[u][i];
            let w = match_r[v];
            if w == NIL || (dist[w] == dist[u] + 1 && self.dfs(w, match_l, match_r, dist)) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = NIL;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let mut g = BipartiteGraph::new(3, 3);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 1);
        g.add_edge(2, 2);
        assert_eq!(g.max_matching(), 3);

        let mut g = BipartiteGraph::new(3, 3);
        g.add_edge(0, 0);
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        assert_eq!(g.max_matching(), 1);
        assert!(!g.has_perfect_matching());
        assert!(BipartiteGraph::new(0, 0).has_perfect_matching());
    }

    #[test]
    fn augmenting_paths_are_found() {
        // A greedy choice 0-0 must be undone to match everyone.
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        assert!(g.has_perfect_matching());
    }
}
