//! δ tables and the engines that compute them.

mod engine;
mod special;
mod table;

pub use engine::{
    ck_delta_row, delta_table_for, engine_domain, flow_delta, generalized_leaf_base_delta, maintain_matching_delta,
    table_from_rows, vq_base_delta, Engine, VertexKind,
};
pub use special::{
    child_types, compute_delta_v3, compute_delta_v4, compute_delta_v5, v5_row, ChildTypeVector, SpecialChildren,
    EXTREMES,
};
pub use table::{level_bound, level_lemma_bound, measured_head_level, measured_neck_level, DeltaTable, LabelDomain};

/// Counters collected while computing tables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeltaStats {
    /// Matching or flow problems solved.
    pub kernel_calls: u64,
    /// Rows handled by the single-heavy-child rule: ≥2, exactly 1, no feasible labels.
    pub v3_steps: [u64; 3],
    /// Rows rejected for ≥17 inflexible children, then cases with ≥2, 1, 0 flexible labels.
    pub v4_branches: [u64; 4],
    /// Rows assembled from the first and second candidate sets.
    pub v5_facts: [u64; 2],
}

impl DeltaStats {
    pub fn merge(&mut self, o: &DeltaStats) {
        self.kernel_calls += o.kernel_calls;
        for i in 0..3 {
            self.v3_steps[i] += o.v3_steps[i];
        }
        for i in 0..4 {
            self.v4_branches[i] += o.v4_branches[i];
        }
        for i in 0..2 {
            self.v5_facts[i] += o.v5_facts[i];
        }
    }
}
