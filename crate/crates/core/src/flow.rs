//! Dinic's maximum flow on small integer networks.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Adds an arc and returns its id; the reverse arc is `id ^ 1`.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: usize) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.adj[from].push(id);
        self.arcs.push(Arc { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently pushed through arc `id`.
    pub(crate) fn flow(&self, id: usize) -> usize {
        self.arcs[id ^ 1].cap
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut total = 0;
        loop {
            let level = self.levels(source);
            if level[sink].is_none() {
                return total;
            }
            let mut next = vec![0usize; self.adj.len()];
            loop {
                let pushed = self.push(source, sink, usize::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn levels(&self, source: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.adj.len()];
        level[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let lu = level[u].expect("queued nodes have a level");
            for &id in &self.adj[u] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && level[arc.to].is_none() {
                    level[arc.to] = Some(lu + 1);
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn push(
        &mut self,
        u: usize,
        sink: usize,
        limit: usize,
        level: &[Option<usize>],
        next: &mut [usize],
    ) -> usize {
        if u == sink {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            let forward = matches!((level[u], level[to]), (Some(a), Some(b)) if b == a + 1);
            if cap > 0 && forward {
                let got = self.push(to, sink, limit.min(cap), level, next);
                if got > 0 {
                    self.arcs[id].cap -= got;
                    self.arcs[id ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 2);
        net.add_arc(0, 2, 1);
        let a = net.add_arc(1, 3, 1);
        net.add_arc(2, 3, 3);
        net.add_arc(1, 2, 1);
        assert_eq!(net.max_flow(0, 3), 3);
        assert_eq!(net.flow(a), 1);
    }

    #[test]
    fn disconnected() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 5);
        assert_eq!(net.max_flow(0, 2), 0);
    }
}
