//! Orientals: the ω-categories of posets, their hom enumeration between
//! parallel 1-cells, and the structural isomorphisms of horizontal
//! composition and suboriental inclusion.

use crate::adc::{Adc, Poset};
use crate::chains::{parse_tuple, tuple_name, Chain};
use crate::nu::{self, NuCell};

#[derive(Debug, Clone)]
pub struct OrientalHandle {
    pub poset: Poset,
    pub complex: Adc,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrientalError {
    #[error("cells are not parallel 1-cells")]
    NotParallel,
    #[error("invalid cut pattern")]
    BadCuts,
    #[error("map is not strictly monotone")]
    NotMonotone,
    #[error("{0}")]
    Other(String),
}

impl OrientalHandle {
    pub fn of_poset(poset: Poset) -> OrientalHandle {
        let complex = Adc::oriental_complex(&poset);
        OrientalHandle { poset, complex }
    }

    /// O_n, the oriental of the total order on n+1 points.
    pub fn standard(n: usize) -> OrientalHandle {
        OrientalHandle::of_poset(Poset::total(n))
    }

    /// The 1-cell whose top chain is the sum of the atoms ⟨v_k, v_{k+1}⟩.
    pub fn path_cell(&self, vertices: &[usize]) -> NuCell {
        assert!(!vertices.is_empty());
        let first = Chain::generator(vertices[0].to_string(), 0);
        let last = Chain::generator(vertices[vertices.len() - 1].to_string(), 0);
        let top = Chain::from_pairs(
            1,
            vertices.windows(2).map(|w| (tuple_name(&[w[0], w[1]]), 1)),
        );
        let cell = NuCell::new(vec![first, top.clone()], vec![last, top]);
        debug_assert!(nu::is_cell(&self.complex, &cell));
        cell
    }

    /// All cells of dimension ≤ `max_dim+1` with 1-source `f` and 1-target
    /// `g`: the cells of the hom ω-category of `f` and `g` up to dimension
    /// `max_dim`, kept in their ambient form.
    pub fn hom_cells(
        &self,
        f: &NuCell,
        g: &NuCell,
        max_dim: usize,
        coeff_cap: i64,
    ) -> Result<Vec<NuCell>, OrientalError> {
        if f.dim != 1 || g.dim != 1 || f.row0[0] != g.row0[0] || f.row1[0] != g.row1[0] {
            return Err(OrientalError::NotParallel);
        }
        let levels = nu::enumerate_by_dim(&self.complex, max_dim + 1, coeff_cap);
        let mut out = Vec::new();
        for level in levels.iter().skip(2) {
            for c in level {
                if c.source_at(1).expect("dim ≥ 2") == *f && c.target_at(1).expect("dim ≥ 2") == *g {
                    out.push(c.clone());
                }
            }
        }
        Ok(out)
    }
}

/// The chain-level functor of a monotone poset map: a generator tuple maps to
/// its image tuple, or to zero when the image is degenerate.
pub fn induced_chain(map: &[usize], x: &Chain) -> Chain {
    Chain::from_pairs(
        x.degree,
        x.coeffs.iter().filter_map(|(name, c)| {
            let tuple = parse_tuple(name).expect("canonical generator name");
            let image: Vec<usize> = tuple.iter().map(|v| map[*v]).collect();
            if image.windows(2).any(|w| w[0] == w[1]) {
                None
            } else {
                Some((tuple_name(&image), *c))
            }
        }),
    )
}

/// The cell-level functor ν of a monotone poset map, applied entry-wise.
pub fn induced_functor(map: &[usize], cell: &NuCell) -> NuCell {
    NuCell::new(
        cell.row0.iter().map(|x| induced_chain(map, x)).collect(),
        cell.row1.iter().map(|x| induced_chain(map, x)).collect(),
    )
}

fn is_strictly_monotone(e: &Poset, f: &Poset, map: &[usize]) -> bool {
    if map.len() != e.size || map.iter().any(|v| *v >= f.size) {
        return false;
    }
    for x in 0..e.size {
        for y in 0..e.size {
            if e.lt(x, y) && !f.lt(map[x], map[y]) {
                return false;
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    map.iter().all(|v| seen.insert(*v))
}

/// Whether ∘₀-composition out of the hom product for the given cut pattern
/// is a bijection onto the hom of the outer cells, per dimension up to
/// `max_dim`.
pub fn check_horizontal_iso(
    n: usize,
    cuts: &[usize],
    max_dim: usize,
    coeff_cap: i64,
) -> Result<bool, OrientalError> {
    if n == 0 || cuts.len() < 2 || cuts[0] != 0 || *cuts.last().unwrap() != n {
        return Err(OrientalError::BadCuts);
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OrientalError::BadCuts);
    }
    let o = OrientalHandle::standard(n);
    let m = cuts.len() - 1;
    let mut factor_homs: Vec<Vec<NuCell>> = Vec::with_capacity(m);
    for k in 0..m {
        let a_k = o.path_cell(&[cuts[k], cuts[k + 1]]);
        let b_k = o.path_cell(&(cuts[k]..=cuts[k + 1]).collect::<Vec<_>>());
        factor_homs.push(o.hom_cells(&a_k, &b_k, max_dim, coeff_cap)?);
    }
    let a = o.path_cell(cuts);
    let b = o.path_cell(&(0..=n).collect::<Vec<_>>());
    let target: Vec<NuCell> = o.hom_cells(&a, &b, max_dim, coeff_cap)?;

    for dim in 2..=(max_dim + 1) {
        let per_factor: Vec<Vec<&NuCell>> = factor_homs
            .iter()
            .map(|h| h.iter().filter(|c| c.dim == dim).collect())
            .collect();
        let mut images = std::collections::BTreeSet::new();
        let mut count = 0usize;
        if per_factor.iter().all(|v| !v.is_empty()) {
            let mut stack: Vec<usize> = vec![0; m];
            'outer: loop {
                // Compose the current tuple, rightmost factor first.
                let mut acc: Option<NuCell> = None;
                for k in 0..m {
                    let cell = per_factor[k][stack[k]].clone();
                    acc = Some(match acc {
                        None => cell,
                        Some(prev) => cell
                            .compose(&prev, 0)
                            .map_err(|e| OrientalError::Other(e.to_string()))?,
                    });
                }
                count += 1;
                images.insert(acc.expect("m ≥ 1"));
                // Advance the product iterator.
                for k in (0..m).rev() {
                    stack[k] += 1;
                    if stack[k] < per_factor[k].len() {
                        break;
                    }
                    stack[k] = 0;
                    if k == 0 {
                        break 'outer;
                    }
                }
            }
        }
        let target_dim: std::collections::BTreeSet<NuCell> =
            target.iter().filter(|c| c.dim == dim).cloned().collect();
        if images.len() != count || images != target_dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a poset inclusion induces a bijection on the hom cells between
/// two parallel 1-cells of its source oriental, up to `max_dim`.
pub fn check_suboriental_iso(
    e: &Poset,
    f_poset: &Poset,
    map: &[usize],
    f: &NuCell,
    g: &NuCell,
    max_dim: usize,
    coeff_cap: i64,
) -> Result<bool, OrientalError> {
    if !is_strictly_monotone(e, f_poset, map) {
        return Err(OrientalError::NotMonotone);
    }
    let oe = OrientalHandle::of_poset(e.clone());
    let of = OrientalHandle::of_poset(f_poset.clone());
    let src_hom = oe.hom_cells(f, g, max_dim, coeff_cap)?;
    let imf = induced_functor(map, f);
    let img = induced_functor(map, g);
    let tgt_hom = of.hom_cells(&imf, &img, max_dim, coeff_cap)?;
    let images: std::collections::BTreeSet<NuCell> =
        src_hom.iter().map(|c| induced_functor(map, c)).collect();
    let tgt: std::collections::BTreeSet<NuCell> = tgt_hom.into_iter().collect();
    Ok(images.len() == src_hom.len() && images == tgt)
}
