use std::fmt;
use std::fmt::Write as _;

/// A label domain `0..=λ` with the central band `L_h = {h..λ-h}` optionally bundled into one slot.
///
/// Slots are `0..h` (concrete), `h` (the band), `h+1..=2h` (concrete `λ-h+1..=λ`).
/// When the band has fewer than two members the domain is the identity on `0..=λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelDomain {
    lambda: u32,
    level: u32,
    compressed: bool,
}

impl LabelDomain {
    /// The uncompressed domain.
    pub fn full(lambda: u32) -> LabelDomain {
        LabelDomain { lambda, level: lambda / 2 + 1, compressed: false }
    }

    /// Domain bundling `L_h`; falls back to the full domain if `|L_h| < 2`.
    pub fn at_level(lambda: u32, h: u32) -> LabelDomain {
        if lambda + 1 >= 2 * h + 2 {
            LabelDomain { lambda, level: h, compressed: true }
        } else {
            LabelDomain::full(lambda)
        }
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// The compression level h (for the full domain, the trivial bound).
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_compressed(&self) -> bool {
        self.compressed
    }

    pub fn slot_count(&self) -> usize {
        if self.compressed {
            2 * self.level as usize + 1
        } else {
            self.lambda as usize + 1
        }
    }

    #[inline]
    pub fn slot_of(&self, label: u32) -> usize {
        debug_assert!(label <= self.lambda);
        if !self.compressed {
            return label as usize;
        }
        let h = self.level;
        if label < h {
            label as usize
        } else if label <= self.lambda - h {
            h as usize
        } else {
            (label + 2 * h - self.lambda) as usize
        }
    }

    pub fn bundle_slot(&self) -> Option<usize> {
        self.compressed.then_some(self.level as usize)
    }

    /// The concrete label of a slot; `None` for the band.
    pub fn concrete_label(&self, slot: usize) -> Option<u32> {
        let s = slot as u32;
        if !self.compressed {
            return Some(s);
        }
        let h = self.level;
        if s < h {
            Some(s)
        } else if s == h {
            None
        } else {
            Some(self.lambda - 2 * h + s)
        }
    }

    /// Members of the band (empty for the full domain).
    #[allow(clippy::reversed_empty_ranges)]
    pub fn bundle_members(&self) -> std::ops::RangeInclusive<u32> {
        if self.compressed {
            self.level..=self.lambda - self.level
        } else {
            1..=0
        }
    }

    /// A band member at distance at least `p` from `b`, preferring the farthest end.
    pub fn bundle_member_far_from(&self, b: u32, p: u32) -> Option<u32> {
        if !self.compressed {
            return None;
        }
        let (lo, hi) = (self.level, self.lambda - self.level);
        let far = if b.abs_diff(lo) >= b.abs_diff(hi) { lo } else { hi };
        (far.abs_diff(b) >= p).then_some(far)
    }

    /// `|L_h − {b−p+1..b+p−1}|`, the band capacity seen from neighbour label `b`.
    pub fn bundle_capacity(&self, b: u32, p: u32) -> u32 {
        if !self.compressed {
            return 0;
        }
        let (lo, hi) = (self.level, self.lambda - self.level);
        let wlo = b.saturating_sub(p - 1).max(lo);
        let whi = (b + p - 1).min(hi);
        let size = hi - lo + 1;
        if wlo > whi {
            size
        } else {
            size - (whi - wlo + 1)
        }
    }

    /// A representative concrete label for each slot, chosen at distance ≥ p from `partner` if possible.
    pub fn representative(&self, slot: usize, partner: u32, p: u32) -> Option<u32> {
        match self.concrete_label(slot) {
            Some(c) => Some(c),
            None => self.bundle_member_far_from(partner, p),
        }
    }
}

/// δ((u,v),(a,b)) over a (possibly compressed) label domain, rows indexed by the head label `a`
/// and columns by the neck label `b`.
#[derive(Clone, PartialEq, Eq)]
pub struct DeltaTable {
    dom: LabelDomain,
    p: u32,
    k: usize,
    bits: Vec<u64>,
}

impl DeltaTable {
    pub fn zeros(dom: LabelDomain, p: u32) -> DeltaTable {
        let k = dom.slot_count();
        DeltaTable { dom, p, k, bits: vec![0; (k * k).div_ceil(64)] }
    }

    /// The table of a single edge: δ(a,b) = 1 iff |a−b| ≥ p.
    pub fn edge(dom: LabelDomain, p: u32) -> DeltaTable {
        let mut t = DeltaTable::zeros(dom, p);
        let k = dom.slot_count();
        for sb in 0..k {
            for sa in 0..k {
                let ok = match (dom.concrete_label(sa), dom.concrete_label(sb)) {
                    (Some(a), Some(b)) => a.abs_diff(b) >= p,
                    (None, Some(b)) => dom.bundle_member_far_from(b, p).is_some(),
                    (Some(a), None) => dom.bundle_member_far_from(a, p).is_some(),
                    (None, None) => has_far_pair(&dom, p),
                };
                t.set_slot(sa, sb, ok);
            }
        }
        t
    }

    /// Builds an uncompressed table from a predicate on concrete labels.
    pub fn from_fn(lambda: u32, p: u32, mut f: impl FnMut(u32, u32) -> bool) -> DeltaTable {
        let mut t = DeltaTable::zeros(LabelDomain::full(lambda), p);
        for b in 0..=lambda {
            for a in 0..=lambda {
                if a.abs_diff(b) >= p && f(a, b) {
                    t.set_slot(a as usize, b as usize, true);
                }
            }
        }
        t
    }

    pub fn domain(&self) -> &LabelDomain {
        &self.dom
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn lambda(&self) -> u32 {
        self.dom.lambda
    }

    pub fn head_level(&self) -> u32 {
        self.dom.level
    }

    pub fn neck_level(&self) -> u32 {
        self.dom.level
    }

    #[inline]
    pub fn get_slot(&self, sa: usize, sb: usize) -> bool {
        let i = sa * self.k + sb;
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set_slot(&mut self, sa: usize, sb: usize, v: bool) {
        let i = sa * self.k + sb;
        if v {
            self.bits[i >> 6] |= 1 << (i & 63);
        } else {
            self.bits[i >> 6] &= !(1 << (i & 63));
        }
    }

    /// δ for concrete labels; 0 whenever |a−b| < p.
    #[inline]
    pub fn get(&self, a: u32, b: u32) -> bool {
        a.abs_diff(b) >= self.p && self.get_slot(self.dom.slot_of(a), self.dom.slot_of(b))
    }

    pub fn any(&self) -> bool {
        self.bits.iter().any(|&w| w != 0)
    }

    /// Some (a,b) with δ(a,b)=1, scanning labels in increasing order.
    pub fn some_feasible_pair(&self) -> Option<(u32, u32)> {
        let l = self.lambda();
        (0..=l).flat_map(|b| (0..=l).map(move |a| (a, b))).find(|&(a, b)| self.get(a, b))
    }

    /// Expands to a dense `(λ+1)×(λ+1)` matrix indexed `[a][b]`.
    pub fn expand(&self) -> Vec<Vec<bool>> {
        let l = self.lambda();
        (0..=l).map(|a| (0..=l).map(|b| self.get(a, b)).collect()).collect()
    }

    /// Writes row `b` given per-slot values for the head label.
    pub fn set_row(&mut self, sb: usize, row: &[bool]) {
        for (sa, &v) in row.iter().enumerate() {
            self.set_slot(sa, sb, v);
        }
    }

    /// Text grid: one line per head label `a`, one column per neck label `b`;
    /// `1`/`0` for feasible/infeasible and `.` where |a−b| < p.
    pub fn dump(&self) -> String {
        let l = self.lambda();
        let mut s = String::new();
        for a in 0..=l {
            for b in 0..=l {
                s.push(if a.abs_diff(b) < self.p {
                    '.'
                } else if self.get(a, b) {
                    '1'
                } else {
                    '0'
                });
            }
            s.push('\n');
        }
        s
    }

    /// Bytes held by the bit matrix, for memory accounting.
    pub fn heap_bytes(&self) -> usize {
        self.bits.len() * 8
    }
}

fn has_far_pair(dom: &LabelDomain, p: u32) -> bool {
    let r = dom.bundle_members();
    r.end().saturating_sub(*r.start()) >= p && !r.is_empty()
}

impl fmt::Debug for DeltaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut head = String::new();
        let _ = write!(head, "DeltaTable(λ={}, p={}, h={}", self.lambda(), self.p, self.dom.level);
        if !self.dom.compressed {
            head.push_str(", full");
        }
        writeln!(f, "{head})")?;
        f.write_str(&self.dump())
    }
}

/// Smallest h ≥ 0 such that the dense table is neck-L_h-compatible: for each `a`, all
/// `b ∈ L_h` with |a−b| ≥ p give the same value.
pub fn measured_neck_level(t: &[Vec<bool>], lambda: u32, p: u32) -> u32 {
    (0..=lambda / 2 + 1)
        .find(|&h| {
            (0..=lambda).all(|a| {
                uniform(
                    (h..=lambda.saturating_sub(h))
                        .filter(|&b| b + h <= lambda && a.abs_diff(b) >= p)
                        .map(|b| t[a as usize][b as usize]),
                )
            })
        })
        .unwrap_or(lambda / 2 + 1)
}

/// Smallest h ≥ 0 such that the dense table is head-L_h-compatible.
pub fn measured_head_level(t: &[Vec<bool>], lambda: u32, p: u32) -> u32 {
    (0..=lambda / 2 + 1)
        .find(|&h| {
            (0..=lambda).all(|b| {
                uniform(
                    (h..=lambda.saturating_sub(h))
                        .filter(|&a| a + h <= lambda && a.abs_diff(b) >= p)
                        .map(|a| t[a as usize][b as usize]),
                )
            })
        })
        .unwrap_or(lambda / 2 + 1)
}

fn uniform(mut it: impl Iterator<Item = bool>) -> bool {
    match it.next() {
        None => true,
        Some(first) => it.all(|x| x == first),
    }
}

/// The smallest h ≥ 1 certified by the Level Lemma: `size < (λ−2h−4p+4)^{h/(2p−2)}` with
/// `λ−2h ≥ 3p−3`. `None` if no such h exists. For p = 1 every level is 0.
pub fn level_lemma_bound(size: usize, lambda: u32, p: u32) -> Option<u32> {
    if p == 1 {
        return Some(0);
    }
    let e = 2 * p - 2;
    let lhs = (size as u128).checked_pow(e);
    let mut h = 1u32;
    while 2 * h + 3 * p - 3 <= lambda {
        let base = lambda as i64 - 2 * h as i64 - 4 * p as i64 + 4;
        if base >= 2 {
            // size^{2p-2} < base^h, with overflow meaning "huge".
            let rhs = (base as u128).checked_pow(h);
            let ok = match (lhs, rhs) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(l), Some(r)) => l < r,
            };
            if ok {
                return Some(h);
            }
        }
        h += 1;
    }
    None
}

/// Compression level for a subtree of the given size: the Level Lemma bound, or the trivial
/// bound ⌈(λ+1)/2⌉ (no compression) when the lemma certifies nothing.
pub fn level_bound(subtree_size: usize, lambda: u32, p: u32) -> u32 {
    level_lemma_bound(subtree_size, lambda, p).unwrap_or((lambda + 2) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_bound_examples() {
        assert_eq!(level_bound(17, 26, 2), 2);
        assert_eq!(level_bound(18, 26, 2), 3);
        assert_eq!(level_bound(12345, 7, 1), 0);
        assert!(level_bound(1295, 26, 2) <= 8);
        // Nothing certified for tiny λ: trivial bound.
        assert_eq!(level_bound(1, 5, 2), 3);
        assert_eq!(level_lemma_bound(1, 5, 2), None);
    }

    #[test]
    fn level_bound_is_monotone_in_size() {
        for lambda in 3..40 {
            for p in 1..4 {
                let mut prev = 0;
                for size in 1..3000 {
                    let h = level_bound(size, lambda, p);
                    assert!(h >= prev, "λ={lambda} p={p} size={size}");
                    prev = h;
                }
            }
        }
    }

    #[test]
    fn slot_mapping_round_trips() {
        let d = LabelDomain::at_level(26, 3);
        assert_eq!(d.slot_count(), 7);
        for x in 0..=26 {
            let s = d.slot_of(x);
            match d.concrete_label(s) {
                Some(c) => assert_eq!(c, x),
                None => assert!((3..=23).contains(&x)),
            }
        }
        assert_eq!(d.slot_of(24), 4);
        assert_eq!(d.slot_of(26), 6);
        assert!(!LabelDomain::at_level(5, 3).is_compressed());
        assert_eq!(d.bundle_capacity(10, 2), 21 - 3);
        assert_eq!(d.bundle_capacity(0, 2), 21);
        assert_eq!(d.bundle_capacity(3, 2), 21 - 2);
    }

    #[test]
    fn edge_table_matches_gap_rule() {
        for (lambda, h, p) in [(10, 2, 2), (12, 3, 3), (6, 0, 1), (9, 9, 2)] {
            let t = DeltaTable::edge(LabelDomain::at_level(lambda, h), p);
            for a in 0..=lambda {
                for b in 0..=lambda {
                    assert_eq!(t.get(a, b), a.abs_diff(b) >= p);
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let t = DeltaTable::edge(LabelDomain::full(2), 2);
        assert_eq!(t.dump(), "..1\n...\n1..\n");
    }
}
