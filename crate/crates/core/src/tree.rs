//! Tree storage, rooted views and structural queries.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub(crate) const NONE: usize = usize::MAX;

/// An immutable, connected, simple tree on vertices `0..n`.
///
/// Adjacency is stored in compressed rows so that million-vertex trees stay cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    nbrs: Vec<usize>,
    max_degree: usize,
}

enum EdgeFault {
    Range,
    SelfLoop,
    Cycle,
}

impl Tree {
    /// The tree with a single vertex.
    pub fn singleton() -> Tree {
        Tree { edges: Vec::new(), offsets: vec![0, 0], nbrs: Vec::new(), max_degree: 0 }
    }

    /// Builds a tree from `n-1` undirected edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        Self::build(n, edges).map_err(|(i, fault)| match fault {
            None => Error::InvalidTree(format!("expected {} edges, got {}", n.saturating_sub(1), edges.len())),
            Some(f) => Error::InvalidTree(format!("edge #{i} {:?}: {}", edges[i], fault_text(&f))),
        })
    }

    fn build(n: usize, edges: &[(usize, usize)]) -> std::result::Result<Tree, (usize, Option<EdgeFault>)> {
        if n == 0 || edges.len() + 1 != n {
            // Locate a more specific fault first so callers get a useful line number.
            if n > 0 {
                check_edges(n, edges).map_err(|(i, f)| (i, Some(f)))?;
            }
            return Err((0, None));
        }
        check_edges(n, edges).map_err(|(i, f)| (i, Some(f)))?;
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut nbrs = vec![0usize; 2 * edges.len()];
        for &(u, v) in edges {
            nbrs[fill[u]] = v;
            fill[u] += 1;
            nbrs[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            nbrs[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let max_degree = deg.iter().copied().max().unwrap_or(0);
        Ok(Tree { edges: edges.to_vec(), offsets, nbrs, max_degree })
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Δ, the maximum degree.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Serializes to the edge-list text format (`n`, then one `u v` line per edge).
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(12 * self.vertex_count());
        let _ = writeln!(s, "{}", self.vertex_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

fn fault_text(f: &EdgeFault) -> &'static str {
    match f {
        EdgeFault::Range => "vertex id out of range",
        EdgeFault::SelfLoop => "self-loop",
        EdgeFault::Cycle => "duplicate edge or cycle",
    }
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> std::result::Result<(), (usize, EdgeFault)> {
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(d: &mut [usize], mut x: usize) -> usize {
        while d[x] != x {
            d[x] = d[d[x]];
            x = d[x];
        }
        x
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err((i, EdgeFault::Range));
        }
        if u == v {
            return Err((i, EdgeFault::SelfLoop));
        }
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a == b {
            return Err((i, EdgeFault::Cycle));
        }
        dsu[a] = b;
    }
    Ok(())
}

/// Parses the edge-list format: first line `n`, then `n-1` lines `u v`.
///
/// Blank trailing lines are tolerated; anything else malformed is reported with its line number.
pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Parse { line: first_no + 1, msg: format!("expected vertex count, got {first:?}") })?;
    if n == 0 {
        return Err(Error::Parse { line: first_no + 1, msg: "vertex count must be at least 1".into() });
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut line_of = Vec::with_capacity(n - 1);
    for (no, line) in lines {
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.and_then(|t| t.parse().ok())
                .ok_or(Error::Parse { line: no + 1, msg: format!("expected \"u v\", got {line:?}") })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse { line: no + 1, msg: format!("trailing tokens in {line:?}") });
        }
        edges.push((u, v));
        line_of.push(no + 1);
    }
    match Tree::build(n, &edges) {
        Ok(t) => Ok(t),
        Err((i, Some(f))) => Err(Error::Parse { line: line_of[i], msg: fault_text(&f).into() }),
        Err((_, None)) => {
            let last = line_of.last().copied().unwrap_or(first_no + 1);
            let msg = if edges.len() + 1 < n {
                format!("disconnected: {} edges for {} vertices", edges.len(), n)
            } else {
                format!("too many edges: {} for {} vertices", edges.len(), n)
            };
            Err(Error::Parse { line: last, msg })
        }
    }
}

/// A tree with a distinguished root and parent/child/subtree indices.
#[derive(Debug, Clone)]
pub struct RootedTree {
    base: Tree,
    root: usize,
    parent: Vec<usize>,
    child_off: Vec<usize>,
    child_list: Vec<usize>,
    size: Vec<usize>,
    height: Vec<usize>,
    order: Vec<usize>,
}

impl RootedTree {
    /// Roots `t` at an arbitrary vertex `r`.
    pub fn new(t: Tree, r: usize) -> RootedTree {
        let n = t.vertex_count();
        assert!(r < n, "root out of range");
        let mut parent = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        order.push(r);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &w in t.neighbors(v) {
                if w != parent[v] {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        let mut child_off = vec![0usize; n + 1];
        for v in 0..n {
            let c = t.degree(v) - usize::from(v != r);
            child_off[v + 1] = child_off[v] + c;
        }
        let mut fill = child_off.clone();
        let mut child_list = vec![0usize; n.saturating_sub(1)];
        for &v in &order[1..] {
            let p = parent[v];
            child_list[fill[p]] = v;
            fill[p] += 1;
        }
        let mut size = vec![1usize; n];
        let mut height = vec![0usize; n];
        for &v in order.iter().rev() {
            let p = parent[v];
            if p != NONE {
                size[p] += size[v];
                height[p] = height[p].max(height[v] + 1);
            }
        }
        RootedTree { base: t, root: r, parent, child_off, child_list, size, height, order }
    }

    pub fn base(&self) -> &Tree {
        &self.base
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NONE).then_some(p)
    }

    /// C(v).
    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_off[v]..self.child_off[v + 1]]
    }

    /// d′(v) = |C(v)|.
    pub fn child_count(&self, v: usize) -> usize {
        self.child_off[v + 1] - self.child_off[v]
    }

    /// |T(v)|.
    pub fn subtree_size(&self, v: usize) -> usize {
        self.size[v]
    }

    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    /// Breadth-first order from the root; parents precede children.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Vertices of T(v) in breadth-first order starting at `v`.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            out.extend_from_slice(self.children(x));
        }
        out
    }
}

/// Roots the tree at its lowest-id leaf (vertex 0 for the singleton).
pub fn root_at_leaf(t: Tree) -> RootedTree {
    let r = (0..t.vertex_count()).find(|&v| t.degree(v) <= 1).unwrap_or(0);
    RootedTree::new(t, r)
}

/// A maximal run of consecutive degree-2 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathComponent {
    pub vertices: Vec<usize>,
}

impl PathComponent {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// All maximal runs of degree-2 vertices, each listed once in path order.
pub fn path_components(t: &Tree) -> Vec<PathComponent> {
    let n = t.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || t.degree(s) != 2 {
            continue;
        }
        // In a tree every run has an end whose outer neighbour is not of degree 2.
        let Some(&outer) = t.neighbors(s).iter().find(|&&w| t.degree(w) != 2) else {
            continue;
        };
        let mut run = vec![s];
        seen[s] = true;
        let (mut prev, mut cur) = (outer, s);
        while let Some(&w) = t.neighbors(cur).iter().find(|&&w| w != prev) {
            if t.degree(w) != 2 {
                break;
            }
            seen[w] = true;
            run.push(w);
            prev = cur;
            cur = w;
        }
        out.push(PathComponent { vertices: run });
    }
    out
}

/// i^≥-major: d(v) ≥ λ−p−i+1.
#[allow(clippy::int_plus_one)]
pub fn is_i_major(t: &Tree, v: usize, i: i64, p: i64, lambda: i64) -> bool {
    t.degree(v) as i64 >= lambda - p - i + 1
}

/// i-major: d(v) = λ−p−i+1.
pub fn is_exactly_i_major(t: &Tree, v: usize, i: i64, p: i64, lambda: i64) -> bool {
    t.degree(v) as i64 == lambda - p - i + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_and_star() {
        let t = parse_tree("2\n0 1").unwrap();
        assert_eq!((t.vertex_count(), t.max_degree()), (2, 1));
        let t = parse_tree("4\n0 1\n0 2\n0 3").unwrap();
        assert_eq!((t.vertex_count(), t.max_degree()), (4, 3));
    }

    #[test]
    fn rejects_disconnected_and_bad_ids() {
        assert!(matches!(parse_tree("4\n0 1\n2 3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("3\n0 1\n1 7"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_tree("3\n0 1\n1 0"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_tree("3\n0 0\n1 2"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_tree("").is_err());
        assert!(parse_tree("3\n0 1\n1 2\n").is_ok());
    }

    #[test]
    fn text_round_trip() {
        let t = parse_tree("5\n0 1\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(parse_tree(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn root_at_leaf_examples() {
        let rt = root_at_leaf(parse_tree("3\n0 1\n1 2").unwrap());
        assert_eq!(rt.root(), 0);
        assert_eq!(rt.subtree_size(1), 2);
        assert_eq!(rt.children(1), &[2]);
        let rt = root_at_leaf(parse_tree("4\n0 1\n0 2\n0 3").unwrap());
        assert_eq!(rt.root(), 1);
        assert_eq!(rt.subtree_size(0), 3);
        assert_eq!(rt.child_count(1), 1);
        let rt = root_at_leaf(Tree::singleton());
        assert_eq!((rt.root(), rt.subtree_size(0)), (0, 1));
    }

    #[test]
    fn path_component_examples() {
        let p5 = parse_tree("5\n0 1\n1 2\n2 3\n3 4").unwrap();
        let pc = path_components(&p5);
        assert_eq!(pc.len(), 1);
        assert_eq!(pc[0].vertices, vec![1, 2, 3]);
        let star = parse_tree("4\n0 1\n0 2\n0 3").unwrap();
        assert!(path_components(&star).is_empty());
        // Two K_{1,3} centres (0 and 9) joined through the run 1..=6.
        let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 9)];
        e.extend([(0, 7), (0, 8), (9, 10), (9, 11)]);
        let t = Tree::from_edges(12, &e).unwrap();
        let pc = path_components(&t);
        assert_eq!(pc.len(), 1);
        assert_eq!(pc[0].size(), 6);
    }

    #[test]
    fn major_formula() {
        let star = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(is_i_major(&star, 0, 0, 2, 6));
        assert!(is_exactly_i_major(&star, 0, 0, 2, 6));
        let s4 = Tree::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!is_i_major(&s4, 0, 0, 2, 6));
        assert!(is_i_major(&s4, 0, 1, 2, 6));
        assert!(is_i_major(&s4, 0, 1, 3, 7));
    }
}
