//! Deterministic tree generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeKind {
    Path,
    Star,
    Caterpillar,
    Broom,
    Random,
    V45Stress,
}

impl std::str::FromStr for TreeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => TreeKind::Path,
            "star" => TreeKind::Star,
            "caterpillar" => TreeKind::Caterpillar,
            "broom" => TreeKind::Broom,
            "random" => TreeKind::Random,
            "v45_stress" => TreeKind::V45Stress,
            _ => return Err(Error::InvalidParameter(format!("unknown tree kind {s:?}"))),
        })
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Generates a tree of the given kind. `delta` is the target maximum degree where the kind uses one.
///
/// * `path`, `star` ignore the seed; `star` requires `delta == n-1` when given.
/// * `random` decodes a uniform Prüfer sequence; with `delta` the sequence is capped so that
///   the maximum degree is exactly `delta` (vertex 0 attains it).
/// * `broom` is a handle path ending in a centre with `delta-1` leaves.
/// * `v45_stress` builds a spine whose vertices carry mixtures of pendant stars and stalks
///   that survive preprocessing at `λ = Δ+1`; the result has at most `n` vertices.
pub fn generate_tree(kind: TreeKind, n: usize, delta: Option<usize>, seed: u64) -> Result<Tree> {
    if n == 0 {
        return Err(bad("n must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match kind {
        TreeKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        TreeKind::Star => {
            if let Some(d) = delta {
                if d + 1 != n {
                    return Err(bad(format!("star with n={n} has degree {}, not {d}", n - 1)));
                }
            }
            (1..n).map(|v| (0, v)).collect()
        }
        TreeKind::Broom => {
            let d = delta.ok_or_else(|| bad("broom needs --delta"))?;
            if d < 2 || n < d + 1 {
                return Err(bad(format!("broom needs delta >= 2 and n >= delta+1 (n={n}, delta={d})")));
            }
            let handle = n - (d - 1);
            let mut e: Vec<_> = (1..handle).map(|v| (v - 1, v)).collect();
            e.extend((handle..n).map(|v| (handle - 1, v)));
            e
        }
        TreeKind::Caterpillar => caterpillar(n, delta.unwrap_or(3), &mut rng)?,
        TreeKind::Random => random_prufer(n, delta, &mut rng)?,
        TreeKind::V45Stress => {
            let d = delta.ok_or_else(|| bad("v45_stress needs --delta"))?;
            v45_stress(n, d, &mut rng)?
        }
    };
    Tree::from_edges(n_of(&edges, n, kind), &edges)
}

fn n_of(edges: &[(usize, usize)], n: usize, kind: TreeKind) -> usize {
    if kind == TreeKind::V45Stress {
        edges.len() + 1
    } else {
        n
    }
}

fn caterpillar(n: usize, delta: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    if delta < 2 && n > 2 {
        return Err(bad("caterpillar needs delta >= 2"));
    }
    let mut e = Vec::with_capacity(n.saturating_sub(1));
    let mut spine = 0usize;
    let mut next = 1usize;
    while next < n {
        // Spine vertices other than the ends keep one slot for each spine neighbour.
        let legs = if delta >= 2 { rng.gen_range(0..=delta - 2) } else { 0 };
        for _ in 0..legs {
            if next >= n - 1 {
                break;
            }
            e.push((spine, next));
            next += 1;
        }
        if next < n {
            e.push((spine, next));
            spine = next;
            next += 1;
        }
    }
    Ok(e)
}

fn random_prufer(n: usize, delta: Option<usize>, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    if n <= 2 {
        if matches!(delta, Some(d) if d + 1 != n) {
            return Err(bad(format!("a tree on {n} vertices has delta {}", n - 1)));
        }
        return Ok((1..n).map(|v| (0, v)).collect());
    }
    let mut seq: Vec<usize> = Vec::with_capacity(n - 2);
    match delta {
        None => seq.extend((0..n - 2).map(|_| rng.gen_range(0..n))),
        Some(d) => {
            if d < 2 || d > n - 1 {
                return Err(bad(format!("random tree on {n} vertices cannot have delta {d}")));
            }
            if d == 2 {
                // Only paths qualify; shuffle the interior order.
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                return Ok((1..n).map(|i| (perm[i - 1], perm[i])).collect());
            }
            // Vertex 0 appears d-1 times (degree d); every other vertex at most d-1 times.
            let mut count = vec![0usize; n];
            seq.extend(std::iter::repeat_n(0, d - 1));
            count[0] = d - 1;
            while seq.len() < n - 2 {
                let v = rng.gen_range(1..n);
                if count[v] + 1 < d {
                    count[v] += 1;
                    seq.push(v);
                }
            }
            for i in (1..seq.len()).rev() {
                seq.swap(i, rng.gen_range(0..=i));
            }
        }
    }
    Ok(prufer_decode(n, &seq))
}

/// Linear-time Prüfer decoding.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut e = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        e.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    e.push((leaf, n - 1));
    e
}

struct Builder {
    e: Vec<(usize, usize)>,
    next: usize,
}

impl Builder {
    fn add(&mut self, parent: usize) -> usize {
        let v = self.next;
        self.next += 1;
        self.e.push((parent, v));
        v
    }

    /// A major vertex under `parent` with `delta-1` pendant leaves.
    fn star(&mut self, parent: usize, delta: usize) -> usize {
        let c = self.add(parent);
        for _ in 0..delta - 1 {
            self.add(c);
        }
        c
    }
}

fn v45_stress(n: usize, delta: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    if delta < 4 || n < 3 * delta {
        return Err(bad(format!("v45_stress needs delta >= 4 and n >= 3*delta (n={n}, delta={delta})")));
    }
    let star = delta;
    let stalk = delta + 1;
    let bar = delta * delta.saturating_sub(19);
    let mut b = Builder { e: Vec::new(), next: 1 };
    // Vertex 0 is a leaf of the top spine vertex, so rooting at the lowest-id leaf starts the spine.
    let top = 1;
    b.e.push((0, top));
    b.next = 2;
    for _ in 0..delta - 2 {
        b.add(top);
    }
    // (spine vertex, is major, has pendant stars). Majors and pendant-star centres both need
    // an extreme label at λ = Δ+1, so no two of them may sit within distance two: a major gets
    // neither pendant stars nor stalks with two stars, never follows a major or a vertex with
    // pendant stars, and the child of a major keeps at most one pendant star.
    let mut stack = vec![(top, true, false)];
    while let Some((s, s_major, s_stars)) = stack.pop() {
        if n.saturating_sub(b.next) < 4 * delta + 4 {
            continue;
        }
        let w = b.add(s);
        let slots = delta - 2; // children of w besides its spine child
        let max_stars = if s_major { 1 } else { 2 };
        let shape = rng.gen_range(0..10u32);
        let mut blocks: Vec<bool> = Vec::new(); // true = stalk, false = star
        let mut forked = false;
        let mut size = 0usize;
        let stars = |blocks: &[bool]| blocks.iter().filter(|&&x| !x).count();
        match shape {
            0 | 1 => {}
            2..=4 => {
                // Pendant weight at or below the V4 bar.
                let k = rng.gen_range(1..=slots.min(6));
                for _ in 0..k {
                    let stalky = stars(&blocks) >= max_stars || rng.gen_bool(0.7);
                    let add = if stalky { stalk } else { star };
                    if size + add > bar.max(star) {
                        break;
                    }
                    size += add;
                    blocks.push(stalky);
                }
            }
            5..=7 => {
                // Pendant weight above the V4 bar.
                while size <= bar && blocks.len() < slots {
                    let stalky = stars(&blocks) >= max_stars || rng.gen_bool(0.85);
                    size += if stalky { stalk } else { star };
                    blocks.push(stalky);
                }
            }
            _ => forked = rng.gen_bool(0.5),
        }
        let mut used = 0usize;
        let mut paired = false;
        if forked {
            let x = b.add(w);
            stack.push((x, false, false));
            used += 1;
        }
        for &stalky in &blocks {
            // Keep room for the spine below and for the tail star budget.
            if b.next + 3 * stalk + 2 * delta >= n {
                break;
            }
            if stalky {
                let x = b.add(w);
                // A stalk with two stars keeps the stalk root flexible but heavier.
                let pair = rng.gen_bool(0.25);
                paired |= pair;
                b.star(x, delta);
                if pair {
                    b.star(x, delta);
                }
            } else {
                b.star(w, delta);
            }
            used += 1;
        }
        // Optionally make w major by padding with leaves.
        let major = !s_major && !s_stars && !forked && !paired && stars(&blocks) == 0 && rng.gen_bool(0.35);
        if major {
            for _ in used..slots {
                b.add(w);
            }
        }
        stack.push((w, major, stars(&blocks) > 0));
    }
    Ok(b.e)
}
