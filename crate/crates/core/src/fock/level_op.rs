use std::collections::BTreeMap;

use serde::Serialize;

use super::FockBasis;
use crate::algebra::WreathClassFunction;
use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::partition::TypeFunction;
use crate::scalar::Scalar;

/// A graded operator on levels `0..=L`, stored block by block.
///
/// The block for source level `k` maps level `k` to level `k + shift`. It is
/// stored when the target lies in `0..=L`. Negative levels are zero spaces,
/// so any map into or out of them is zero; levels above `L` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOperator {
    max_level: usize,
    shift: i64,
    blocks: BTreeMap<usize, Matrix>,
}

/// Result of comparing two operators on their common blocks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Comparison {
    pub blocks_compared: usize,
    pub cells_compared: usize,
    pub mismatch_count: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub level: usize,
    pub row: String,
    pub col: String,
    pub expected: String,
    pub actual: String,
}

pub const MAX_REPORTED_MISMATCHES: usize = 20;

impl Comparison {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0 && self.blocks_compared > 0
    }

    pub fn merge(&mut self, other: Comparison) {
        self.blocks_compared += other.blocks_compared;
        self.cells_compared += other.cells_compared;
        self.mismatch_count += other.mismatch_count;
        for m in other.mismatches {
            if self.mismatches.len() < MAX_REPORTED_MISMATCHES {
                self.mismatches.push(m);
            }
        }
    }
}

impl LevelOperator {
    pub fn zero(basis: &FockBasis, shift: i64) -> Self {
        let mut blocks = BTreeMap::new();
        for k in 0..=basis.max_level() {
            let t = k as i64 + shift;
            if t >= 0 && t <= basis.max_level() as i64 {
                blocks.insert(k, Matrix::zeros(basis.dim(t as usize), basis.dim(k)));
            }
        }
        LevelOperator { max_level: basis.max_level(), shift, blocks }
    }

    pub fn identity(basis: &FockBasis) -> Self {
        let blocks = (0..=basis.max_level()).map(|k| (k, Matrix::identity(basis.dim(k)))).collect();
        LevelOperator { max_level: basis.max_level(), shift: 0, blocks }
    }

    /// Build from the action on basis vectors.
    pub fn from_map(
        basis: &FockBasis,
        shift: i64,
        mut f: impl FnMut(usize, &TypeFunction) -> Result<WreathClassFunction, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let mut blocks = BTreeMap::new();
        for k in 0..=basis.max_level() {
            let t = k as i64 + shift;
            if t < 0 || t > basis.max_level() as i64 {
                continue;
            }
            let t = t as usize;
            let mut cols = Vec::with_capacity(basis.dim(k));
            for rho in basis.types(k) {
                let v = f(k, rho)?;
                if !v.is_zero() && v.n != t {
                    return Err(AlgebraError::LevelMismatch(v.n, t));
                }
                cols.push(v.to_vec(basis.types(t)));
            }
            blocks.insert(k, Matrix::from_columns(basis.dim(t), cols));
        }
        Ok(LevelOperator { max_level: basis.max_level(), shift, blocks })
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }
    pub fn max_level(&self) -> usize {
        self.max_level
    }
    pub fn block(&self, k: usize) -> Option<&Matrix> {
        self.blocks.get(&k)
    }
    pub fn blocks(&self) -> &BTreeMap<usize, Matrix> {
        &self.blocks
    }

    pub fn apply(&self, basis: &FockBasis, k: usize, v: &WreathClassFunction) -> Option<WreathClassFunction> {
        let m = self.blocks.get(&k)?;
        let t = (k as i64 + self.shift) as usize;
        let out = m.apply(&v.to_vec(basis.types(k)));
        Some(WreathClassFunction::from_vec(t, basis.types(t), &out))
    }

    /// `self o other`.
    pub fn compose(&self, other: &LevelOperator, basis: &FockBasis) -> LevelOperator {
        let l = self.max_level as i64;
        let shift = self.shift + other.shift;
        let mut blocks = BTreeMap::new();
        for k in 0..=self.max_level {
            let mid = k as i64 + other.shift;
            let tgt = mid + self.shift;
            if mid > l || tgt < 0 || tgt > l {
                continue;
            }
            if mid < 0 {
                blocks.insert(k, Matrix::zeros(basis.dim(tgt as usize), basis.dim(k)));
                continue;
            }
            if let (Some(b), Some(a)) = (other.blocks.get(&k), self.blocks.get(&(mid as usize))) {
                blocks.insert(k, a.mul(b));
            }
        }
        LevelOperator { max_level: self.max_level, shift, blocks }
    }

    fn zip(&self, other: &LevelOperator, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<LevelOperator, AlgebraError> {
        if self.shift != other.shift {
            return Err(AlgebraError::ShiftMismatch(self.shift, other.shift));
        }
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(k, a)| other.blocks.get(k).map(|b| (*k, f(a, b))))
            .collect();
        Ok(LevelOperator { max_level: self.max_level, shift: self.shift, blocks })
    }

    pub fn add(&self, other: &LevelOperator) -> Result<LevelOperator, AlgebraError> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &LevelOperator) -> Result<LevelOperator, AlgebraError> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Scalar) -> LevelOperator {
        LevelOperator {
            max_level: self.max_level,
            shift: self.shift,
            blocks: self.blocks.iter().map(|(k, m)| (*k, m.scale(s))).collect(),
        }
    }

    /// `[self, other]` on the blocks where both products are known.
    pub fn commutator(&self, other: &LevelOperator, basis: &FockBasis) -> LevelOperator {
        let ab = self.compose(other, basis);
        let ba = other.compose(self, basis);
        ab.sub(&ba).expect("equal shifts")
    }

    /// Conjugate each block by per-level change of basis: `P_t A P_k^-1`.
    pub fn conjugate(&self, p: &[Matrix], p_inv: &[Matrix]) -> LevelOperator {
        let blocks = self
            .blocks
            .iter()
            .map(|(k, a)| {
                let t = (*k as i64 + self.shift) as usize;
                (*k, p[t].mul(a).mul(&p_inv[*k]))
            })
            .collect();
        LevelOperator { max_level: self.max_level, shift: self.shift, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Compare on common blocks; `self` is the expected side.
    pub fn compare(&self, actual: &LevelOperator, basis: &FockBasis) -> Comparison {
        let mut cmp = Comparison::default();
        if self.shift != actual.shift {
            cmp.mismatch_count = 1;
            cmp.mismatches.push(Mismatch {
                level: 0,
                row: "shift".into(),
                col: "shift".into(),
                expected: self.shift.to_string(),
                actual: actual.shift.to_string(),
            });
            return cmp;
        }
        for (k, a) in &self.blocks {
            let Some(b) = actual.blocks.get(k) else { continue };
            cmp.blocks_compared += 1;
            cmp.cells_compared += a.rows() * a.cols();
            let t = (*k as i64 + self.shift) as usize;
            for (i, j) in a.diff_cells(b) {
                cmp.mismatch_count += 1;
                if cmp.mismatches.len() < MAX_REPORTED_MISMATCHES {
                    cmp.mismatches.push(Mismatch {
                        level: *k,
                        row: basis.types(t)[i].to_string(),
                        col: basis.types(*k)[j].to_string(),
                        expected: a.get(i, j).to_string(),
                        actual: b.get(i, j).to_string(),
                    });
                }
            }
        }
        cmp
    }
}
