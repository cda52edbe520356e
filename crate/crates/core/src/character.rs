use crate::class_algebra::ClassFunctionG;
use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::scalar::{parse_scalar, Scalar};

/// Irreducible characters of a group, one row per character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    rows: Vec<ClassFunctionG>,
    degrees: Vec<u64>,
    h: Vec<u64>,
    group_fingerprint: u64,
}

impl CharacterTable {
    pub fn from_strings(
        group: &FiniteGroup,
        conductor: u32,
        rows: &[Vec<String>],
    ) -> Result<Self, GroupError> {
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            let vals: Result<Vec<Scalar>, _> = r.iter().map(|s| parse_scalar(s, conductor)).collect();
            parsed.push(vals?);
        }
        Self::new(group, parsed)
    }

    /// Validate rows exactly: shape, trivial first row, integral degrees,
    /// row orthonormality and the column relation.
    pub fn new(group: &FiniteGroup, rows: Vec<Vec<Scalar>>) -> Result<Self, GroupError> {
        let nc = group.num_classes();
        if rows.len() != nc {
            return Err(GroupError::TableShape { got: rows.len(), expected: nc });
        }
        for r in &rows {
            if r.len() != nc {
                return Err(GroupError::TableShape { got: r.len(), expected: nc });
            }
        }
        if !rows[0].iter().all(|v| v.is_one()) {
            return Err(GroupError::NotTrivialFirst);
        }
        let order = group.order() as u64;
        let mut degrees = Vec::with_capacity(nc);
        let mut h = Vec::with_capacity(nc);
        for (i, r) in rows.iter().enumerate() {
            let d = r[0].to_i64().filter(|&d| d > 0 && order % d as u64 == 0);
            let d = d.ok_or(GroupError::BadDegree(i))? as u64;
            degrees.push(d);
            h.push(order / d);
        }
        let rows: Vec<ClassFunctionG> = rows.into_iter().map(ClassFunctionG::new).collect();
        for i in 0..nc {
            for j in i..nc {
                let v = crate::class_algebra::bilinear_form(group, &rows[i], &rows[j])
                    .map_err(|_| GroupError::Orthogonality(i, j))?;
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                if v != want {
                    return Err(GroupError::Orthogonality(i, j));
                }
            }
        }
        for c in 0..nc {
            for c2 in 0..nc {
                let s: Scalar = rows
                    .iter()
                    .map(|g| &g.values[c2] * &g.values[group.inv_class(c)])
                    .sum();
                let want = if c == c2 { Scalar::from_int(group.zeta(c)) } else { Scalar::zero() };
                if s != want {
                    return Err(GroupError::ColumnRelation(c, c2));
                }
            }
        }
        Ok(CharacterTable { rows, degrees, h, group_fingerprint: group.fingerprint() })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn row(&self, i: usize) -> &ClassFunctionG {
        &self.rows[i]
    }
    pub fn rows(&self) -> &[ClassFunctionG] {
        &self.rows
    }
    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }
    /// `h = |G| / degree`.
    pub fn h(&self, i: usize) -> u64 {
        self.h[i]
    }
    pub fn matches(&self, group: &FiniteGroup) -> bool {
        self.group_fingerprint == group.fingerprint()
    }

    /// Index of the character whose row equals the complex conjugate of row `i`.
    pub fn dual(&self, i: usize) -> usize {
        let conj = ClassFunctionG::new(self.rows[i].values.iter().map(|v| v.conj()).collect());
        self.rows.iter().position(|r| *r == conj).expect("table closed under conjugation")
    }

    /// Coordinates of `f` in the basis `e_i = row_i / h_i`, i.e. the scalars
    /// by which the idempotent pieces of `f` act. `f = sum_i a_i e_i` where
    /// `a_i = h_i <f, row_i>`.
    pub fn idempotent_coords(&self, group: &FiniteGroup, f: &ClassFunctionG) -> Vec<Scalar> {
        (0..self.len())
            .map(|i| {
                let v = crate::class_algebra::bilinear_form(group, f, &self.rows[i]).expect("shape");
                &v * &Scalar::from_int(self.h[i])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::group::load_preset;

    #[test]
    fn sym3_degrees() {
        let t = load_preset("sym3").unwrap().characters.unwrap();
        assert_eq!((0..3).map(|i| t.degree(i)).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!((0..3).map(|i| t.h(i)).collect::<Vec<_>>(), vec![6, 6, 3]);
    }

    #[test]
    fn duplicated_row_rejected() {
        let b = load_preset("cyclic2").unwrap();
        let rows = vec![vec!["1".to_string(), "1".into()], vec!["1".into(), "1".into()]];
        let e = super::CharacterTable::from_strings(&b.group, 1, &rows).unwrap_err();
        assert!(matches!(e, crate::error::GroupError::Orthogonality(0, 1)));
    }

    #[test]
    fn cyclic3_duals() {
        let t = load_preset("cyclic3").unwrap().characters.unwrap();
        assert_eq!(t.dual(0), 0);
        assert_eq!(t.dual(1), 2);
    }
}
