//! Cells of ν(K) as two-row matrices of positive chains.
//!
//! An i-cell is a matrix with rows `row0` (source side) and `row1` (target
//! side), entry k of degree k, subject to: every entry positive, boundary
//! condition `d(rowε[k]) = row1[k−1] − row0[k−1]`, augmentation 1 at the
//! corners, and equal top entries.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::adc::Adc;
use crate::chains::Chain;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NuCell {
    pub dim: usize,
    pub row0: Vec<Chain>,
    pub row1: Vec<Chain>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NuError {
    #[error("cell has dimension 0, no source or target")]
    DimensionZero,
    #[error("composition index {0} out of range for dimension {1}")]
    BadIndex(usize, usize),
    #[error("cells are not {0}-composable")]
    NotComposable(usize),
}

impl NuCell {
    pub fn new(row0: Vec<Chain>, row1: Vec<Chain>) -> NuCell {
        assert_eq!(row0.len(), row1.len());
        assert!(!row0.is_empty());
        NuCell { dim: row0.len() - 1, row0, row1 }
    }

    /// The 0-cell on a degree-0 chain.
    pub fn object(x: Chain) -> NuCell {
        NuCell::new(vec![x.clone()], vec![x])
    }

    pub fn top(&self) -> &Chain {
        &self.row0[self.dim]
    }

    /// Matrix entry, taking `x^ε_k = 0` for k above the dimension.
    pub fn entry(&self, row: u8, k: usize) -> Chain {
        let r = if row == 0 { &self.row0 } else { &self.row1 };
        r.get(k).cloned().unwrap_or_else(|| Chain::zero(k))
    }

    pub fn source(&self) -> Result<NuCell, NuError> {
        if self.dim == 0 {
            return Err(NuError::DimensionZero);
        }
        let mut row0 = self.row0[..self.dim].to_vec();
        let mut row1 = self.row1[..self.dim].to_vec();
        let top = row0[self.dim - 1].clone();
        row0[self.dim - 1] = top.clone();
        row1[self.dim - 1] = top;
        Ok(NuCell::new(row0, row1))
    }

    pub fn target(&self) -> Result<NuCell, NuError> {
        if self.dim == 0 {
            return Err(NuError::DimensionZero);
        }
        let mut row0 = self.row0[..self.dim].to_vec();
        let mut row1 = self.row1[..self.dim].to_vec();
        let top = row1[self.dim - 1].clone();
        row0[self.dim - 1] = top.clone();
        row1[self.dim - 1] = top;
        Ok(NuCell::new(row0, row1))
    }

    /// Iterated source down to dimension j.
    pub fn source_at(&self, j: usize) -> Result<NuCell, NuError> {
        let mut c = self.clone();
        while c.dim > j {
            c = c.source()?;
        }
        Ok(c)
    }

    pub fn target_at(&self, j: usize) -> Result<NuCell, NuError> {
        let mut c = self.clone();
        while c.dim > j {
            c = c.target()?;
        }
        Ok(c)
    }

    pub fn identity(&self) -> NuCell {
        let mut row0 = self.row0.clone();
        let mut row1 = self.row1.clone();
        row0.push(Chain::zero(self.dim + 1));
        row1.push(Chain::zero(self.dim + 1));
        NuCell::new(row0, row1)
    }

    /// True iff the top entry is zero, i.e. the cell is an identity.
    pub fn is_identity_cell(&self) -> bool {
        self.dim > 0 && self.top().is_zero()
    }

    /// `self ∘_j other`: `other` first, then `self`; requires the j-target of
    /// `other` to equal the j-source of `self`.
    pub fn compose(&self, other: &NuCell, j: usize) -> Result<NuCell, NuError> {
        if self.dim != other.dim || j >= self.dim {
            return Err(NuError::BadIndex(j, self.dim));
        }
        let s = self.source_at(j).expect("dimension checked");
        let t = other.target_at(j).expect("dimension checked");
        if s != t {
            return Err(NuError::NotComposable(j));
        }
        let mut row0 = Vec::with_capacity(self.dim + 1);
        let mut row1 = Vec::with_capacity(self.dim + 1);
        for k in 0..=self.dim {
            if k <= j {
                row0.push(other.row0[k].clone());
                row1.push(self.row1[k].clone());
            } else {
                row0.push(self.row0[k].add(&other.row0[k]).expect("degrees agree"));
                row1.push(self.row1[k].add(&other.row1[k]).expect("degrees agree"));
            }
        }
        Ok(NuCell::new(row0, row1))
    }

    /// Promotes to the given dimension by taking iterated identities.
    pub fn promote(&self, dim: usize) -> NuCell {
        let mut c = self.clone();
        while c.dim < dim {
            c = c.identity();
        }
        c
    }

    /// Compact identifier: rows of compact chains.
    pub fn name(&self) -> String {
        let p = |row: &[Chain]| row.iter().map(Chain::compact).collect::<Vec<_>>().join(";");
        format!("{}|{}", p(&self.row0), p(&self.row1))
    }
}

/// The four cell conditions, checked literally.
pub fn is_cell(k: &Adc, m: &NuCell) -> bool {
    for row in [&m.row0, &m.row1] {
        for (deg, x) in row.iter().enumerate() {
            if x.degree != deg || !x.is_positive() {
                return false;
            }
            if x.coeffs.keys().any(|n| k.degree_of(n) != Some(deg)) {
                return false;
            }
        }
    }
    for eps in [0u8, 1] {
        for kk in 1..=m.dim {
            let d = k.boundary(&m.entry(eps, kk));
            let want = m.entry(1, kk - 1).sub(&m.entry(0, kk - 1)).expect("degrees agree");
            if d != want {
                return false;
            }
        }
        if k.augment(&m.entry(eps, 0)) != 1 {
            return false;
        }
    }
    m.row0[m.dim] == m.row1[m.dim]
}

/// The atom of a basis element as a cell; panics if the complex is not
/// unital at that generator.
pub fn atom_cell(k: &Adc, name: &str) -> NuCell {
    let a = k.atom_of(name);
    let cell = NuCell::new(a.row0, a.row1);
    assert!(is_cell(k, &cell), "atom of {name} is not a cell");
    cell
}

/// Solves `d(z) = w` for positive chains `z` of the given degree with
/// coefficients in `0..=cap`, in deterministic order.
fn solve_boundary(k: &Adc, degree: usize, w: &Chain, cap: i64) -> Vec<Chain> {
    let upper: &[String] = if degree < k.basis.len() { &k.basis[degree] } else { &[] };
    if upper.is_empty() {
        return if w.is_zero() { vec![Chain::zero(degree)] } else { vec![] };
    }
    let lower = &k.basis[degree - 1];
    let low_index: HashMap<&str, usize> =
        lower.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    // Dense differential columns and residual vector.
    let cols: Vec<Vec<(usize, i64)>> = upper
        .iter()
        .map(|u| {
            k.diff[u]
                .coeffs
                .iter()
                .map(|(n, c)| (low_index[n.as_str()], *c))
                .collect()
        })
        .collect();
    let mut residual = vec![0i64; lower.len()];
    for (n, c) in &w.coeffs {
        residual[low_index[n.as_str()]] = *c;
    }
    // After the last column touching a coordinate is fixed, that coordinate
    // must be exactly zero.
    let mut last_touch = vec![usize::MAX; lower.len()];
    for (ui, col) in cols.iter().enumerate() {
        for (li, _) in col {
            last_touch[*li] = ui;
        }
    }
    for (li, r) in residual.iter().enumerate() {
        if last_touch[li] == usize::MAX && *r != 0 {
            return vec![];
        }
    }
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; upper.len()];
    solve_rec(&cols, &last_touch, &mut residual, &mut coeffs, 0, cap, &mut out);
    out.sort();
    out.into_iter()
        .map(|cs: Vec<i64>| {
            Chain::from_pairs(
                degree,
                cs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (upper[i].clone(), *c)),
            )
        })
        .collect()
}

fn solve_rec(
    cols: &[Vec<(usize, i64)>],
    last_touch: &[usize],
    residual: &mut [i64],
    coeffs: &mut [i64],
    at: usize,
    cap: i64,
    out: &mut Vec<Vec<i64>>,
) {
    if at == cols.len() {
        if residual.iter().all(|r| *r == 0) {
            out.push(coeffs.to_vec());
        }
        return;
    }
    for c in 0..=cap {
        coeffs[at] = c;
        for (li, v) in &cols[at] {
            residual[*li] -= c * v;
        }
        let ok = cols[at].iter().all(|(li, _)| last_touch[*li] != at || residual[*li] == 0);
        if ok {
            solve_rec(cols, last_touch, residual, coeffs, at + 1, cap, out);
        }
        for (li, v) in &cols[at] {
            residual[*li] += c * v;
        }
    }
    coeffs[at] = 0;
}

/// All cells of ν(K) of dimension ≤ `max_dim` whose entries have coefficients
/// in `0..=coeff_cap`, in a canonical order.
pub fn enumerate_cells(k: &Adc, max_dim: usize, coeff_cap: i64) -> Vec<NuCell> {
    let by_dim = enumerate_by_dim(k, max_dim, coeff_cap);
    let mut all: Vec<NuCell> = by_dim.into_iter().flatten().collect();
    all.sort();
    all
}

/// Cells grouped by dimension, each level sorted.
pub fn enumerate_by_dim(k: &Adc, max_dim: usize, coeff_cap: i64) -> Vec<Vec<NuCell>> {
    let mut levels: Vec<Vec<NuCell>> = Vec::new();
    let mut objects = Vec::new();
    for x in positive_chains_with_aug_one(k, coeff_cap) {
        objects.push(NuCell::object(x));
    }
    objects.sort();
    levels.push(objects);
    for dim in 0..max_dim {
        let mut next = Vec::new();
        // Group the current level by shared lower rows; within a group any
        // ordered pair of tops can frame a higher cell.
        let mut groups: HashMap<String, Vec<&NuCell>> = HashMap::new();
        for c in &levels[dim] {
            let mut frame = String::new();
            for kk in 0..dim {
                frame.push_str(&c.row0[kk].compact());
                frame.push('/');
                frame.push_str(&c.row1[kk].compact());
                frame.push('|');
            }
            groups.entry(frame).or_default().push(c);
        }
        let mut keys: Vec<&String> = groups.keys().collect();
        keys.sort();
        for key in keys {
            let cells = &groups[key];
            for s in cells {
                for t in cells {
                    let w = t.top().sub(s.top()).expect("same degree");
                    for z in solve_boundary(k, dim + 1, &w, coeff_cap) {
                        let mut row0 = s.row0.clone();
                        let mut row1 = s.row1.clone();
                        row0[dim] = s.top().clone();
                        row1[dim] = t.top().clone();
                        row0.push(z.clone());
                        row1.push(z);
                        next.push(NuCell::new(row0, row1));
                    }
                }
            }
        }
        next.sort();
        next.dedup();
        levels.push(next);
    }
    levels
}

fn positive_chains_with_aug_one(k: &Adc, cap: i64) -> Vec<Chain> {
    fn rec(
        k: &Adc,
        verts: &[String],
        cur: &mut Vec<i64>,
        at: usize,
        aug_so_far: i64,
        cap: i64,
        out: &mut Vec<Chain>,
    ) {
        if at == verts.len() {
            if aug_so_far == 1 {
                out.push(Chain::from_pairs(
                    0,
                    cur.iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(i, c)| (verts[i].clone(), *c)),
                ));
            }
            return;
        }
        for c in 0..=cap {
            cur[at] = c;
            rec(k, verts, cur, at + 1, aug_so_far + c * k.aug[&verts[at]], cap, out);
        }
        cur[at] = 0;
    }
    let verts = &k.basis[0];
    let mut out = Vec::new();
    let mut cur: Vec<i64> = vec![0; verts.len()];
    rec(k, verts, &mut cur, 0, 0, cap, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, deg: usize) -> Chain {
        Chain::generator(name, deg)
    }

    #[test]
    fn atoms_are_cells() {
        let k = Adc::simplex_complex(3);
        for name in k.basis.iter().flatten() {
            let a = atom_cell(&k, name);
            assert!(is_cell(&k, &a));
        }
    }

    #[test]
    fn positivity_violation_is_rejected() {
        let k = Adc::simplex_complex(2);
        let bad = NuCell::new(
            vec![
                gen("0", 0),
                Chain::from_pairs(1, [("0-1", 1), ("1-2", 1)]),
                gen("0-1-2", 2),
            ],
            vec![
                gen("2", 0),
                Chain::from_pairs(1, [("0-1", 2), ("1-2", 2), ("0-2", -1)]),
                gen("0-1-2", 2),
            ],
        );
        // Direct positivity oracle on the offending entry.
        assert!(!bad.row1[1].is_positive());
        assert!(!is_cell(&k, &bad));
    }

    #[test]
    fn identity_shaped_matrix_is_a_cell() {
        let k = Adc::simplex_complex(2);
        let b = NuCell::object(gen("1", 0));
        assert!(is_cell(&k, &b));
        assert!(is_cell(&k, &b.identity()));
    }

    #[test]
    fn source_target_of_tetrahedron_atom() {
        let k = Adc::simplex_complex(3);
        let a = atom_cell(&k, "0-1-2-3");
        let s = a.source().unwrap();
        assert_eq!(*s.top(), Chain::from_pairs(2, [("0-1-2", 1), ("0-2-3", 1)]));
        let t = a.target().unwrap();
        assert_eq!(*t.top(), Chain::from_pairs(2, [("1-2-3", 1), ("0-1-3", 1)]));
        // Source of an identity is the cell itself.
        let x = atom_cell(&k, "0-1");
        assert_eq!(x.identity().source().unwrap(), x);
    }

    #[test]
    fn identity_formulas() {
        let k = Adc::simplex_complex(2);
        let f = atom_cell(&k, "0-1");
        let idf = f.identity();
        assert_eq!(idf.row0, vec![gen("0", 0), gen("0-1", 1), Chain::zero(2)]);
        assert_eq!(idf.row1, vec![gen("1", 0), gen("0-1", 1), Chain::zero(2)]);
        assert_eq!(idf.source().unwrap(), f);
        let idid = idf.identity();
        assert!(idid.row0[2].is_zero() && idid.row0[3].is_zero());
    }

    #[test]
    fn compose_path() {
        let k = Adc::simplex_complex(2);
        let f01 = atom_cell(&k, "0-1");
        let f12 = atom_cell(&k, "1-2");
        let path = f12.compose(&f01, 0).unwrap();
        assert_eq!(path.row0[1], Chain::from_pairs(1, [("0-1", 1), ("1-2", 1)]));
        assert!(is_cell(&k, &path));
        // Oracle: boundary endpoints.
        assert_eq!(path.row0[0], gen("0", 0));
        assert_eq!(path.row1[0], gen("2", 0));
        // Wrong order is not composable.
        assert!(f01.compose(&f12, 0).is_err());
    }

    #[test]
    fn source_of_tetrahedron_is_a_composite() {
        let k = Adc::simplex_complex(3);
        let t012 = atom_cell(&k, "0-1-2");
        let t023 = atom_cell(&k, "0-2-3");
        let e23 = atom_cell(&k, "2-3").promote(2);
        let upper = e23.compose(&t012, 0).unwrap();
        let whole = upper.compose(&t023, 1).unwrap();
        assert_eq!(whole, atom_cell(&k, "0-1-2-3").source().unwrap());
    }

    #[test]
    fn unit_law() {
        let k = Adc::simplex_complex(2);
        let t = atom_cell(&k, "0-1-2");
        let unit = t.source_at(0).unwrap().promote(2);
        assert_eq!(t.compose(&unit, 0).unwrap(), t);
        let unit_left = t.target_at(0).unwrap().promote(2);
        assert_eq!(unit_left.compose(&t, 0).unwrap(), t);
    }

    #[test]
    fn census_of_triangle_cells() {
        // Brute-force census: ν(λΔ²) has exactly four non-identity 1-cells
        // and exactly one non-identity 2-cell.
        let k = Adc::simplex_complex(2);
        let levels = enumerate_by_dim(&k, 2, 1);
        assert_eq!(levels[0].len(), 3);
        let one: Vec<_> = levels[1].iter().filter(|c| !c.is_identity_cell()).collect();
        assert_eq!(one.len(), 4);
        let tops: Vec<String> = one.iter().map(|c| c.top().compact()).collect();
        assert!(tops.contains(&"01".to_string()));
        assert!(tops.contains(&"12".to_string()));
        assert!(tops.contains(&"02".to_string()));
        assert!(tops.contains(&"01+12".to_string()));
        let two: Vec<_> = levels[2].iter().filter(|c| !c.is_identity_cell()).collect();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0], &atom_cell(&k, "0-1-2"));
    }

    #[test]
    fn hom_cells_between_short_and_long_path() {
        // ν(λΔ³): exactly two 2-cells from ⟨0-3⟩ to the full path, and no new
        // ones at coefficient cap 2.
        let k = Adc::simplex_complex(3);
        let f = atom_cell(&k, "0-3");
        let path = Chain::from_pairs(1, [("0-1", 1), ("1-2", 1), ("2-3", 1)]);
        let count = |cap: i64| {
            enumerate_by_dim(&k, 2, cap)[2]
                .iter()
                .filter(|c| c.row0[1] == *f.top() && c.row1[1] == path)
                .count()
        };
        assert_eq!(count(1), 2);
        assert_eq!(count(2), 2);
    }

    #[test]
    fn enumerated_cells_all_pass_is_cell() {
        let k = Adc::simplex_complex(2);
        for c in enumerate_cells(&k, 3, 1) {
            assert!(is_cell(&k, &c));
        }
    }
}
