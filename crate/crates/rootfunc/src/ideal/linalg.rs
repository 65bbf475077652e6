//! Exact sparse Gaussian elimination over monomial-indexed vectors.
//!
//! Vectors are sparse maps from exponent (column) to coefficient, columns
//! ordered graded-lexicographically. Pivoting is deterministic: each row's
//! pivot is its first nonzero column, and the form is kept fully reduced, so
//! ranks, kernels and solved combinations are reproducible across runs.

use std::collections::BTreeMap;

use crate::ring::exponent::Exponent;
use crate::ring::field::ExactField;

/// Sparse row/vector: column exponent → nonzero coefficient.
pub type SparseVec<K> = BTreeMap<Exponent, K>;

/// `dst -= factor·src`, dropping entries that cancel.
fn sub_scaled<K: ExactField>(dst: &mut SparseVec<K>, factor: &K, src: &SparseVec<K>) {
    for (col, v) in src {
        let delta = factor.mul_ref(v);
        match dst.remove(col) {
            Some(old) => {
                let new = old.sub_ref(&delta);
                if !new.is_zero() {
                    dst.insert(col.clone(), new);
                }
            }
            None => {
                dst.insert(col.clone(), delta.neg_ref());
            }
        }
    }
}

fn sub_scaled_combo<K: ExactField>(
    dst: &mut BTreeMap<usize, K>,
    factor: &K,
    src: &BTreeMap<usize, K>,
) {
    for (idx, v) in src {
        let delta = factor.mul_ref(v);
        match dst.remove(idx) {
            Some(old) => {
                let new = old.sub_ref(&delta);
                if !new.is_zero() {
                    dst.insert(*idx, new);
                }
            }
            None => {
                dst.insert(*idx, delta.neg_ref());
            }
        }
    }
}

struct Row<K: ExactField> {
    vec: SparseVec<K>,
    /// How this row was formed from the inserted vectors; tracked only when
    /// the echelon was built with combination tracking.
    combo: BTreeMap<usize, K>,
}

/// Incrementally maintained reduced echelon form.
///
/// Every stored row is normalized (pivot coefficient 1) and fully reduced
/// (no support on any other row's pivot column).
pub struct Echelon<K: ExactField> {
    track: bool,
    inserted: usize,
    rows: BTreeMap<Exponent, Row<K>>,
}

impl<K: ExactField> Echelon<K> {
    pub fn new(track_combinations: bool) -> Self {
        Echelon {
            track: track_combinations,
            inserted: 0,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors pushed through [`Echelon::insert`], including those
    /// that reduced to zero.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Exponent> {
        self.rows.keys()
    }

    /// Cancels every pivot-column entry of `vec` (and mirrors the operations
    /// on `combo` when given). Afterwards `vec` has no support on any pivot.
    fn reduce(&self, vec: &mut SparseVec<K>, mut combo: Option<&mut BTreeMap<usize, K>>) {
        // Rows carry no support on other pivots, so one ascending pass is
        // enough: a cancelled pivot column never reappears.
        for (pivot, row) in &self.rows {
            if let Some(factor) = vec.get(pivot).cloned() {
                sub_scaled(vec, &factor, &row.vec);
                if let Some(c) = combo.as_deref_mut() {
                    sub_scaled_combo(c, &factor, &row.combo);
                }
            }
        }
    }

    /// Inserts a vector, returning its pivot column if it enlarged the span.
    pub fn insert(&mut self, mut vec: SparseVec<K>) -> Option<Exponent> {
        let index = self.inserted;
        self.inserted += 1;
        let mut combo: BTreeMap<usize, K> = BTreeMap::new();
        if self.track {
            combo.insert(index, K::one());
        }
        self.reduce(&mut vec, self.track.then_some(&mut combo));
        let pivot = match vec.keys().next() {
            Some(p) => p.clone(),
            None => return None,
        };
        // Normalize so the pivot coefficient is 1.
        let lead = vec.get(&pivot).cloned().expect("pivot entry present");
        for v in vec.values_mut() {
            *v = v.div_ref(&lead);
        }
        for v in combo.values_mut() {
            *v = v.div_ref(&lead);
        }
        // Keep the form fully reduced: clear the new pivot column everywhere.
        let track = self.track;
        for row in self.rows.values_mut() {
            if let Some(factor) = row.vec.get(&pivot).cloned() {
                sub_scaled(&mut row.vec, &factor, &vec);
                if track {
                    sub_scaled_combo(&mut row.combo, &factor, &combo);
                }
            }
        }
        self.rows.insert(pivot.clone(), Row { vec, combo });
        Some(pivot)
    }

    /// Whether `vec` lies in the row span.
    pub fn is_in_span(&self, vec: &SparseVec<K>) -> bool {
        let mut v = vec.clone();
        self.reduce(&mut v, None);
        v.is_empty()
    }

    /// Expresses `target` as a combination of the inserted vectors, keyed by
    /// insertion index. Requires combination tracking. Returns `None` when
    /// the target is outside the span; the combination is the deterministic
    /// one induced by insertion order and first-nonzero pivoting.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<BTreeMap<usize, K>> {
        assert!(self.track, "solve needs an echelon built with tracking");
        let mut residual = target.clone();
        let mut acc: BTreeMap<usize, K> = BTreeMap::new();
        for (pivot, row) in &self.rows {
            if let Some(factor) = residual.get(pivot).cloned() {
                sub_scaled(&mut residual, &factor, &row.vec);
                // target = Σ acc_i·inserted_i + residual, so acc gains
                // +factor·combo while the residual loses factor·row.
                let neg = factor.neg_ref();
                sub_scaled_combo(&mut acc, &neg, &row.combo);
            }
        }
        residual.is_empty().then_some(acc)
    }

    /// Kernel of the row-space pairing over the given column list: one basis
    /// vector per non-pivot column `m` (ascending), with entry 1 at `m` and
    /// the balancing entries at pivot columns. The reduced-echelon convention
    /// makes this basis canonical.
    pub fn kernel_basis(&self, cols: &[Exponent]) -> Vec<SparseVec<K>> {
        let mut out = Vec::new();
        for m in cols {
            if self.rows.contains_key(m) {
                continue;
            }
            let mut v: SparseVec<K> = BTreeMap::new();
            v.insert(m.clone(), K::one());
            for (pivot, row) in &self.rows {
                if let Some(c) = row.vec.get(m) {
                    v.insert(pivot.clone(), c.neg_ref());
                }
            }
            out.push(v);
        }
        out
    }
}
