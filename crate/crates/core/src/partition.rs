//! Partitions and partition-valued functions on the classes of a group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn multiplicity(&self, r: u32) -> u32 {
        self.0.iter().filter(|&&p| p == r).count() as u32
    }
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z = prod_i i^{m_i} m_i!`
    pub fn z(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (r, m) in self.multiplicities() {
            for k in 1..=m {
                acc *= BigUint::from(r) * BigUint::from(k);
            }
        }
        acc
    }

    pub fn insert(&mut self, r: u32) {
        let pos = self.0.iter().position(|&p| p < r).unwrap_or(self.0.len());
        self.0.insert(pos, r);
    }

    /// Remove one part equal to `r`; false if there is none.
    pub fn remove(&mut self, r: u32) -> bool {
        match self.0.iter().position(|&p| p == r) {
            Some(i) => {
                self.0.remove(i);
                true
            }
            None => false,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![], &mut out);
    out
}

/// A partition-valued function on class ids; empty partitions are not stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TypeFunction(Vec<(usize, Partition)>);

impl TypeFunction {
    pub fn empty() -> Self {
        TypeFunction(Vec::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Partition)>) -> Self {
        let mut m: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (c, p) in pairs {
            m.entry(c).or_default().extend_from_slice(p.parts());
        }
        TypeFunction(
            m.into_iter()
                .map(|(c, v)| (c, Partition::new(v)))
                .filter(|(_, p)| !p.is_empty())
                .collect(),
        )
    }

    /// A single cycle of length `r` colored `c`.
    pub fn cycle(c: usize, r: u32) -> Self {
        TypeFunction(vec![(c, Partition(vec![r]))])
    }

    /// `(1^n)` at the identity class.
    pub fn identity(n: u32) -> Self {
        if n == 0 {
            return Self::empty();
        }
        TypeFunction(vec![(0, Partition(vec![1; n as usize]))])
    }

    pub fn entries(&self) -> &[(usize, Partition)] {
        &self.0
    }

    pub fn get(&self, c: usize) -> Option<&Partition> {
        self.0.iter().find(|(k, _)| *k == c).map(|(_, p)| p)
    }

    /// `||rho|| = sum_c |rho(c)|`
    pub fn norm(&self) -> u32 {
        self.0.iter().map(|(_, p)| p.size()).sum()
    }

    /// Total number of parts.
    pub fn length(&self) -> usize {
        self.0.iter().map(|(_, p)| p.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn with_part(&self, c: usize, r: u32) -> Self {
        let mut v = self.0.clone();
        match v.iter_mut().find(|(k, _)| *k == c) {
            Some((_, p)) => p.insert(r),
            None => {
                v.push((c, Partition(vec![r])));
                v.sort_by_key(|e| e.0);
            }
        }
        TypeFunction(v)
    }

    pub fn without_part(&self, c: usize, r: u32) -> Option<Self> {
        let mut v = self.0.clone();
        let i = v.iter().position(|(k, _)| *k == c)?;
        if !v[i].1.remove(r) {
            return None;
        }
        if v[i].1.is_empty() {
            v.remove(i);
        }
        Some(TypeFunction(v))
    }

    pub fn multiplicity(&self, c: usize, r: u32) -> u32 {
        self.get(c).map_or(0, |p| p.multiplicity(r))
    }

    /// Union of parts class by class.
    pub fn union(&self, other: &Self) -> Self {
        Self::from_pairs(self.0.iter().cloned().chain(other.0.iter().cloned()))
    }

    /// Pad with `k` identity 1-cycles.
    pub fn padded(&self, k: u32) -> Self {
        self.union(&Self::identity(k))
    }

    /// Apply a relabelling of class ids (e.g. `c -> c^-1`).
    pub fn map_classes(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.0.iter().map(|(c, p)| (f(*c), p.clone())))
    }

    /// `z~ = prod_{r,c} r^{m_r(c)} m_r(c)!`
    pub fn z_tilde(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, (_, p)| acc * p.z())
    }
}

impl fmt::Display for TypeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, (c, p)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "c{c}: {p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for TypeFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All type functions of norm `n` on `num_classes` classes, sorted.
pub fn enumerate_types(num_classes: usize, n: u32) -> Vec<TypeFunction> {
    fn go(c: usize, nc: usize, left: u32, cur: &mut Vec<(usize, Partition)>, out: &mut Vec<TypeFunction>) {
        if c == nc {
            if left == 0 {
                out.push(TypeFunction(cur.clone()));
            }
            return;
        }
        for s in 0..=left {
            if s == 0 {
                go(c + 1, nc, left, cur, out);
                continue;
            }
            for p in partitions(s) {
                cur.push((c, p));
                go(c + 1, nc, left - s, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, num_classes, n, &mut vec![], &mut out);
    out.sort();
    out
}

/// All type functions of norm at most `n`, sorted by norm then order.
pub fn types_up_to(num_classes: usize, n: u32) -> Vec<TypeFunction> {
    (0..=n).flat_map(|k| enumerate_types(num_classes, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let c: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn colored_counts() {
        assert_eq!(enumerate_types(1, 4).len(), 5);
        assert_eq!(enumerate_types(2, 3).len(), 10);
        assert_eq!(enumerate_types(3, 4).len(), 51);
        assert_eq!(types_up_to(2, 3).len(), 18);
    }

    #[test]
    fn z_values() {
        assert_eq!(Partition::new(vec![2, 1, 1]).z(), BigUint::from(4u32));
        assert_eq!(Partition::new(vec![3]).z(), BigUint::from(3u32));
        let t = TypeFunction::from_pairs([(0, Partition::new(vec![1, 1])), (1, Partition::new(vec![2]))]);
        assert_eq!(t.z_tilde(), BigUint::from(4u32));
    }

    #[test]
    fn edit_parts() {
        let t = TypeFunction::identity(2).with_part(1, 3);
        assert_eq!(t.norm(), 5);
        let u = t.without_part(0, 1).unwrap().without_part(0, 1).unwrap();
        assert_eq!(u, TypeFunction::cycle(1, 3));
        assert!(u.without_part(0, 1).is_none());
    }
}
