//! Integral max-flow (Dinic) and the children × labels assignment network with
//! ψ-alternating residual reachability.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    flow: u32,
}

/// A general directed network with integer capacities, solved by Dinic's algorithm.
/// Arc `2i` is the forward arc of the i-th added edge and `2i+1` its residual twin.
#[derive(Debug, Clone, Default)]
pub struct Dinic {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    it: Vec<usize>,
}

impl Dinic {
    pub fn new(nodes: usize) -> Dinic {
        Dinic { arcs: Vec::new(), adj: vec![Vec::new(); nodes], level: Vec::new(), it: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds arc u→v and returns its id.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap, flow: 0 });
        self.arcs.push(Arc { to: u, cap: 0, flow: 0 });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    pub fn cap(&self, arc: usize) -> u32 {
        self.arcs[arc].cap
    }

    pub fn flow(&self, arc: usize) -> u32 {
        self.arcs[arc].flow
    }

    #[inline]
    fn residual(&self, a: usize) -> u32 {
        if a & 1 == 0 {
            self.arcs[a].cap - self.arcs[a].flow
        } else {
            self.arcs[a ^ 1].flow
        }
    }

    fn push(&mut self, a: usize, f: u32) {
        if a & 1 == 0 {
            self.arcs[a].flow += f;
        } else {
            self.arcs[a ^ 1].flow -= f;
        }
    }

    /// Value of a maximum s→t flow; arc flows are left in place.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0u64;
        let mut queue = VecDeque::with_capacity(n);
        loop {
            self.level.clear();
            self.level.resize(n, u32::MAX);
            self.level[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.arcs[a].to;
                    if self.level[v] == u32::MAX && self.residual(a) > 0 {
                        self.level[v] = self.level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if self.level[t] == u32::MAX {
                return total;
            }
            self.it.clear();
            self.it.resize(n, 0);
            loop {
                let f = self.dfs(s, t, u32::MAX);
                if f == 0 {
                    break;
                }
                total += u64::from(f);
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u32) -> u32 {
        if u == t {
            return limit;
        }
        while self.it[u] < self.adj[u].len() {
            let a = self.adj[u][self.it[u]];
            let v = self.arcs[a].to;
            let r = self.residual(a);
            if r > 0 && self.level[v] == self.level[u] + 1 {
                let f = self.dfs(v, t, limit.min(r));
                if f > 0 {
                    self.push(a, f);
                    return f;
                }
            }
            self.it[u] += 1;
        }
        0
    }
}

/// The network 𝒩: s → child (cap 1), child → label (cap 0/1), label → t (given capacity).
///
/// Label nodes may be bundles with capacity above one.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    children: usize,
    labels: usize,
    g: Dinic,
    label_arc: Vec<usize>,
    // Per child: (label, arc id) for each child → label arc.
    child_arcs: Vec<Vec<(usize, usize)>>,
    // Per label: (child, arc id) for each arc entering the label.
    into_label: Vec<Vec<(usize, usize)>>,
    value: Option<u64>,
}

impl FlowNetwork {
    pub const SOURCE: usize = 0;
    pub const SINK: usize = 1;

    pub fn new(children: usize, label_caps: &[u32]) -> FlowNetwork {
        Self::with_supplies(&vec![1; children], label_caps)
    }

    /// As [`FlowNetwork::new`] with per-child source capacities (bundled children).
    pub fn with_supplies(supplies: &[u32], label_caps: &[u32]) -> FlowNetwork {
        let children = supplies.len();
        let labels = label_caps.len();
        let mut g = Dinic::new(2 + children + labels);
        for (c, &s) in supplies.iter().enumerate() {
            g.add_arc(Self::SOURCE, 2 + c, s);
        }
        let label_arc =
            label_caps.iter().enumerate().map(|(j, &cap)| g.add_arc(2 + children + j, Self::SINK, cap)).collect();
        FlowNetwork {
            children,
            labels,
            g,
            label_arc,
            child_arcs: vec![Vec::new(); children],
            into_label: vec![Vec::new(); labels],
            value: None,
        }
    }

    /// Adds the child → label arc with the given capacity (zero-capacity arcs are skipped).
    pub fn add_edge(&mut self, child: usize, label: usize, cap: u32) {
        if cap == 0 {
            return;
        }
        let a = self.g.add_arc(2 + child, 2 + self.children + label, cap);
        self.child_arcs[child].push((label, a));
        self.into_label[label].push((child, a));
    }

    pub fn child_count(&self) -> usize {
        self.children
    }

    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn label_capacity(&self, label: usize) -> u32 {
        self.g.cap(self.label_arc[label])
    }

    pub fn label_flow(&self, label: usize) -> u32 {
        self.g.flow(self.label_arc[label])
    }

    /// Computes (once) and returns the maximum flow value.
    pub fn max_flow(&mut self) -> u64 {
        if let Some(v) = self.value {
            return v;
        }
        let v = self.g.max_flow(Self::SOURCE, Self::SINK);
        self.value = Some(v);
        v
    }

    /// The label each child sends its unit of flow to, if any.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        self.child_arcs.iter().map(|arcs| arcs.iter().find(|&&(_, a)| self.g.flow(a) > 0).map(|&(l, _)| l)).collect()
    }

    /// Label nodes reachable from X′ (labels whose sink arc has slack) by ψ-alternating
    /// paths: label ← child over an arc with residual capacity, child → label over an arc
    /// carrying flow. Requires `max_flow` to have run.
    pub fn residual_reachable(&self) -> Vec<bool> {
        debug_assert!(self.value.is_some(), "max_flow must run first");
        let mut seen = vec![false; self.labels];
        let mut child_seen = vec![false; self.children];
        let mut queue = VecDeque::new();
        for (j, &a) in self.label_arc.iter().enumerate() {
            if self.g.cap(a) > self.g.flow(a) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
        while let Some(j) = queue.pop_front() {
            for &(c, a) in &self.into_label[j] {
                if child_seen[c] || self.g.cap(a) <= self.g.flow(a) {
                    continue;
                }
                child_seen[c] = true;
                for &(j2, a2) in &self.child_arcs[c] {
                    if self.g.flow(a2) > 0 && !seen[j2] {
                        seen[j2] = true;
                        queue.push_back(j2);
                    }
                }
            }
        }
        seen
    }
}
