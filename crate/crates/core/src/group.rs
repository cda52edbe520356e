//! Finite groups given by multiplication tables.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::Path;

use num_integer::Integer;

use crate::character::CharacterTable;
use crate::error::GroupError;
use crate::scalar::parse_scalar;

/// A finite group with its conjugacy classes.
///
/// Class 0 is the identity class; the other classes are sorted by their
/// least element id. `class_rep(c)` is that least element.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    identity: u32,
    inv: Vec<u32>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<usize>,
    zeta: Vec<u64>,
    inv_class: Vec<usize>,
    exponent: u64,
    fingerprint: u64,
    // a[c][c'][c''] flattened
    structure: Vec<u64>,
}

pub const PRESETS: &[&str] = &[
    "trivial",
    "cyclic2",
    "cyclic3",
    "cyclic4",
    "cyclic5",
    "cyclic6",
    "sym3",
    "dihedral8",
    "quaternion8",
];

impl FiniteGroup {
    /// Validate a multiplication table and compute classes.
    pub fn from_table(name: &str, order: usize, mul: Vec<u32>) -> Result<Self, GroupError> {
        if order == 0 || mul.len() != order * order {
            return Err(GroupError::TableShape { got: mul.len(), expected: order * order });
        }
        for (i, &x) in mul.iter().enumerate() {
            if x as usize >= order {
                return Err(GroupError::OutOfRange(i / order, i % order));
            }
        }
        let m = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| m(x, y) == identity && m(y, x) == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inv[x] = y as u32;
        }

        // conjugation orbits
        let mut class_of = vec![usize::MAX; order];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        let mut seeds: Vec<usize> = vec![identity];
        seeds.extend((0..order).filter(|&x| x != identity));
        for x in seeds {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut orbit: Vec<u32> = (0..order)
                .map(|g| m(m(g, x), inv[g] as usize) as u32)
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                class_of[y as usize] = id;
            }
            raw.push(orbit);
        }
        let classes = raw;
        let zeta: Vec<u64> = classes.iter().map(|c| (order / c.len()) as u64).collect();
        let inv_class: Vec<usize> = classes
            .iter()
            .map(|c| class_of[inv[c[0] as usize] as usize])
            .collect();

        let mut exponent = 1u64;
        for x in 0..order {
            let mut k = 1u64;
            let mut y = x;
            while y != identity {
                y = m(y, x);
                k += 1;
            }
            exponent = exponent.lcm(&k);
        }

        let nc = classes.len();
        let mut structure = vec![0u64; nc * nc * nc];
        for (t, cls) in classes.iter().enumerate() {
            let z = cls[0] as usize;
            for x in 0..order {
                // y = x^-1 z
                let y = m(inv[x] as usize, z);
                structure[(class_of[x] * nc + class_of[y]) * nc + t] += 1;
            }
        }

        let mut h = DefaultHasher::new();
        order.hash(&mut h);
        mul.hash(&mut h);
        let fingerprint = h.finish();

        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            mul,
            identity: identity as u32,
            inv,
            classes,
            class_of,
            zeta,
            inv_class,
            exponent,
            fingerprint,
            structure,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> u32 {
        self.identity
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }
    #[inline]
    pub fn class_of(&self, a: u32) -> usize {
        self.class_of[a as usize]
    }
    pub fn class_rep(&self, c: usize) -> u32 {
        self.classes[c][0]
    }
    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }
    /// Centralizer order of an element of class `c`.
    pub fn zeta(&self, c: usize) -> u64 {
        self.zeta[c]
    }
    pub fn inv_class(&self, c: usize) -> usize {
        self.inv_class[c]
    }
    pub fn exponent(&self) -> u64 {
        self.exponent
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// `#{(x, y) : x in c, y in c', xy = rep(c'')}`.
    pub fn structure_constant(&self, c: usize, c2: usize, c3: usize) -> u64 {
        let nc = self.classes.len();
        self.structure[(c * nc + c2) * nc + c3]
    }

    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        self.fingerprint == other.fingerprint && self.mul == other.mul
    }
}

fn cyclic_table(k: usize) -> Vec<u32> {
    (0..k * k).map(|i| ((i / k + i % k) % k) as u32).collect()
}

fn perm_table(perms: &[Vec<u32>]) -> Vec<u32> {
    // (p q)(i) = p(q(i))
    let n = perms.len();
    let mut t = Vec::with_capacity(n * n);
    for p in perms {
        for q in perms {
            let r: Vec<u32> = q.iter().map(|&i| p[i as usize]).collect();
            t.push(perms.iter().position(|x| *x == r).unwrap() as u32);
        }
    }
    t
}

fn sym3_table() -> Vec<u32> {
    let perms: Vec<Vec<u32>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    perm_table(&perms)
}

fn dihedral8_table() -> Vec<u32> {
    // id(r^a s^b) = a + 4b, s r = r^-1 s
    let mut t = Vec::with_capacity(64);
    for x in 0..8u32 {
        for y in 0..8u32 {
            let (a, b) = (x % 4, x / 4);
            let (c, d) = (y % 4, y / 4);
            let c = if b == 1 { (4 - c) % 4 } else { c };
            t.push((a + c) % 4 + 4 * ((b + d) % 2));
        }
    }
    t
}

fn quaternion8_table() -> Vec<u32> {
    // ids: 1, -1, i, -i, j, -j, k, -k
    // unit products on {1,i,j,k} as (sign, unit)
    const U: [[(i8, u8); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let mut t = Vec::with_capacity(64);
    for x in 0..8usize {
        for y in 0..8usize {
            let (sx, ux) = (if x % 2 == 0 { 1 } else { -1 }, x / 2);
            let (sy, uy) = (if y % 2 == 0 { 1 } else { -1 }, y / 2);
            let (s, u) = U[ux][uy];
            let sign = sx * sy * s as i32;
            t.push((2 * u as usize + if sign > 0 { 0 } else { 1 }) as u32);
        }
    }
    t
}

/// Character values for presets, rows of strings per class in class order.
fn preset_characters(name: &str) -> Option<(u32, Vec<Vec<String>>)> {
    let rows = |v: &[&[&str]]| -> Vec<Vec<String>> {
        v.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    };
    match name {
        "trivial" => Some((1, rows(&[&["1"]]))),
        "sym3" => Some((1, rows(&[&["1", "1", "1"], &["1", "-1", "1"], &["2", "0", "-1"]]))),
        "dihedral8" => Some((
            1,
            rows(&[
                &["1", "1", "1", "1", "1"],
                &["1", "1", "1", "-1", "-1"],
                &["1", "-1", "1", "1", "-1"],
                &["1", "-1", "1", "-1", "1"],
                &["2", "0", "-2", "0", "0"],
            ]),
        )),
        "quaternion8" => Some((
            1,
            rows(&[
                &["1", "1", "1", "1", "1"],
                &["1", "1", "1", "-1", "-1"],
                &["1", "1", "-1", "1", "-1"],
                &["1", "1", "-1", "-1", "1"],
                &["2", "-2", "0", "0", "0"],
            ]),
        )),
        _ => {
            let k: u32 = name.strip_prefix("cyclic")?.parse().ok()?;
            let rows = (0..k)
                .map(|j| (0..k).map(|x| format!("z^{}", (j * x) % k)).collect())
                .collect();
            Some((k, rows))
        }
    }
}

/// A group together with its character table, when one is known.
#[derive(Clone, Debug)]
pub struct GroupBundle {
    pub group: FiniteGroup,
    pub characters: Option<CharacterTable>,
}

pub fn load_preset(name: &str) -> Result<GroupBundle, GroupError> {
    let table = match name {
        "trivial" => vec![0],
        "sym3" => sym3_table(),
        "dihedral8" => dihedral8_table(),
        "quaternion8" => quaternion8_table(),
        _ => match name.strip_prefix("cyclic").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if (2..=6).contains(&k) => cyclic_table(k),
            _ => return Err(GroupError::UnknownPreset(name.to_string())),
        },
    };
    let order = (table.len() as f64).sqrt().round() as usize;
    let group = FiniteGroup::from_table(name, order, table)?;
    let (cond, rows) = preset_characters(name).expect("every preset ships a table");
    let characters = Some(CharacterTable::from_strings(&group, cond, &rows)?);
    Ok(GroupBundle { group, characters })
}

/// Parse the text format
///
/// ```text
/// # comment
/// order 3
/// 0 1 2
/// 1 2 0
/// 2 0 1
/// characters 3
/// 1, 1, 1
/// 1, z, z^2
/// 1, z^2, z
/// ```
///
/// The `characters M` block is optional; `M` is the conductor used by a bare
/// `z`. Values are listed per class in the library's class order.
pub fn parse_group_text(name: &str, text: &str) -> Result<GroupBundle, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, head) = lines.next().ok_or(GroupError::Syntax { line: 0, msg: "empty file".into() })?;
    let order: usize = head
        .strip_prefix("order")
        .and_then(|s| s.trim().parse().ok())
        .ok_or(GroupError::Syntax { line: ln, msg: "expected `order N`".into() })?;
    let mut table = Vec::with_capacity(order * order);
    for _ in 0..order {
        let (ln, row) = lines
            .next()
            .ok_or(GroupError::Syntax { line: ln, msg: "missing table rows".into() })?;
        let vals: Result<Vec<u32>, _> = row.split_whitespace().map(|t| t.parse::<u32>()).collect();
        let vals = vals.map_err(|e| GroupError::Syntax { line: ln, msg: e.to_string() })?;
        if vals.len() != order {
            return Err(GroupError::Syntax { line: ln, msg: format!("expected {order} entries") });
        }
        table.extend(vals);
    }
    let group = FiniteGroup::from_table(name, order, table)?;
    let characters = match lines.next() {
        None => None,
        Some((ln, head)) => {
            let cond: u32 = head
                .strip_prefix("characters")
                .and_then(|s| s.trim().parse().ok())
                .ok_or(GroupError::Syntax { line: ln, msg: "expected `characters M`".into() })?;
            let mut rows = Vec::new();
            for (ln, row) in lines {
                let vals: Vec<String> = row.split(',').map(|s| s.trim().to_string()).collect();
                for v in &vals {
                    parse_scalar(v, cond).map_err(|_| GroupError::Syntax {
                        line: ln,
                        msg: format!("bad value `{v}`"),
                    })?;
                }
                rows.push(vals);
            }
            Some(CharacterTable::from_strings(&group, cond, &rows)?)
        }
    };
    Ok(GroupBundle { group, characters })
}

/// Load a preset by name, or a group file by path.
pub fn load_group(source: &str) -> Result<GroupBundle, GroupError> {
    if PRESETS.contains(&source) {
        return load_preset(source);
    }
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Io { path: source.to_string(), source: e })?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
        return parse_group_text(name, &text);
    }
    Err(GroupError::UnknownPreset(source.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym3_classes() {
        let g = load_preset("sym3").unwrap().group;
        assert_eq!(g.classes(), &[vec![0], vec![1, 2, 5], vec![3, 4]]);
        assert_eq!((0..3).map(|c| g.zeta(c)).collect::<Vec<_>>(), vec![6, 2, 3]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn presets_load() {
        for p in PRESETS {
            let b = load_preset(p).unwrap();
            assert!(b.characters.is_some());
            let g = &b.group;
            for c in 0..g.num_classes() {
                assert_eq!(g.zeta(c) as usize * g.class_size(c), g.order());
                assert_eq!(g.zeta(c), g.zeta(g.inv_class(c)));
            }
        }
    }

    #[test]
    fn bad_table_names_triple() {
        // 0 1 / 1 1 is not a group; identity exists but 1 has no inverse
        let e = FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1]).unwrap_err();
        assert!(matches!(e, GroupError::NoInverse(1)));
        let e = FiniteGroup::from_table("bad", 3, vec![0, 1, 2, 1, 0, 0, 2, 0, 0]).unwrap_err();
        assert!(matches!(e, GroupError::NotAssociative { .. }));
    }

    #[test]
    fn structure_constants_symmetric() {
        let g = load_preset("dihedral8").unwrap().group;
        let n = g.num_classes();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.structure_constant(a, b, c), g.structure_constant(b, a, c));
                }
            }
        }
    }
}
