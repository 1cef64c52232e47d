//! Constraint cells of simplicial maps between Street nerves.
//!
//! A simplicial map distorts cells and simple composites; the distortion is
//! measured by the principal 3-cells of the images of a fixed family of
//! template 3-simplices. A map is a simplicial oplax 3-morphism when the
//! τ_d, γ_l and ε_l cells are all trivial.

use std::collections::BTreeMap;

use crate::cat3::{Cell, FiniteThreeCat};
use crate::nerve::{Simplex, SimplicialMap, Tuple};

/// Builds a 3-simplex of the nerve from its label rows; panics on a template
/// that does not assemble, which would be a bug in the caller.
fn simplex3(
    a: &FiniteThreeCat,
    v: [Cell; 4],
    e: [(Tuple, Cell); 6],
    t: [(Tuple, Cell); 4],
    h: Cell,
) -> Simplex {
    let mut labels: BTreeMap<Tuple, Cell> = BTreeMap::new();
    for (i, o) in v.into_iter().enumerate() {
        labels.insert(vec![i as u8], o);
    }
    for (k, c) in e.into_iter().chain(t) {
        labels.insert(k, c);
    }
    labels.insert(vec![0, 1, 2, 3], h);
    Simplex::assemble(a, 3, labels).expect("constraint template is a simplex")
}

fn principal_image(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    x: &Simplex,
) -> Cell {
    f.apply(a, b, x).principal(b)
}

/// The two encodings of a 2-cell α: f → g as 2-simplices.
pub fn two_cell_simplices(a: &FiniteThreeCat, al: Cell) -> (Simplex, Simplex) {
    let (f, g) = (a.src(al), a.tgt(al));
    let (o, op) = (a.src(f), a.tgt(f));
    let left = Simplex::assemble(
        a,
        2,
        BTreeMap::from([
            (vec![0u8], o),
            (vec![1u8], o),
            (vec![2u8], op),
            (vec![0u8, 1], a.id(o)),
            (vec![1u8, 2], g),
            (vec![0u8, 2], f),
            (vec![0u8, 1, 2], al),
        ]),
    )
    .expect("alpha_l");
    let right = Simplex::assemble(
        a,
        2,
        BTreeMap::from([
            (vec![0u8], o),
            (vec![1u8], op),
            (vec![2u8], op),
            (vec![0u8, 1], g),
            (vec![1u8, 2], a.id(op)),
            (vec![0u8, 2], f),
            (vec![0u8, 1, 2], al),
        ]),
    )
    .expect("alpha_r");
    (left, right)
}

/// τ_d(α) and τ_u(α): how the map exchanges the two encodings of α.
pub fn tau_cells(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    al: Cell,
) -> (Cell, Cell) {
    let (ef, g) = (a.src(al), a.tgt(al));
    let (o, op) = (a.src(ef), a.tgt(ef));
    let (i0, i1) = (a.id(o), a.id(op));
    let down = simplex3(
        a,
        [o, o, op, op],
        [
            (vec![0, 1], i0),
            (vec![1, 2], g),
            (vec![2, 3], i1),
            (vec![0, 2], ef),
            (vec![1, 3], ef),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], al),
            (vec![0, 2, 3], a.id(ef)),
            (vec![1, 2, 3], al),
            (vec![0, 1, 3], a.id(ef)),
        ],
        a.id(al),
    );
    let up = simplex3(
        a,
        [o, o, op, op],
        [
            (vec![0, 1], i0),
            (vec![1, 2], g),
            (vec![2, 3], i1),
            (vec![0, 2], g),
            (vec![1, 3], g),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], a.id(g)),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], a.id(g)),
            (vec![0, 1, 3], al),
        ],
        a.id(al),
    );
    (principal_image(f, a, b, &down), principal_image(f, a, b, &up))
}

/// γ_l(α) and γ_r(α) for a triangle datum α: f → h∘₀g.
pub fn gamma_cells(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    al: Cell,
    g: Cell,
    h: Cell,
) -> (Cell, Cell) {
    let ef = a.src(al);
    let hg = a.comp(0, h, g).expect("legs compose");
    assert_eq!(a.tgt(al), hg, "datum is not a triangle filler");
    let (o, op, opp) = (a.src(g), a.tgt(g), a.tgt(h));
    let left = simplex3(
        a,
        [o, o, op, opp],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], g),
            (vec![2, 3], h),
            (vec![0, 2], g),
            (vec![1, 3], hg),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], a.id(g)),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], a.id(hg)),
            (vec![0, 1, 3], al),
        ],
        a.id(al),
    );
    let right = simplex3(
        a,
        [o, op, opp, opp],
        [
            (vec![0, 1], g),
            (vec![1, 2], h),
            (vec![2, 3], a.id(opp)),
            (vec![0, 2], hg),
            (vec![1, 3], h),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], a.id(hg)),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], a.id(h)),
            (vec![0, 1, 3], al),
        ],
        a.id(al),
    );
    (principal_image(f, a, b, &left), principal_image(f, a, b, &right))
}

/// σ(β, α) for a 1-composable pair of 2-cells.
pub fn sigma_cell(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    be: Cell,
    al: Cell,
) -> Cell {
    let (ef, g) = (a.src(al), a.tgt(al));
    let h = a.tgt(be);
    assert_eq!(a.src(be), g);
    let (o, op) = (a.src_at(al, 0), a.tgt_at(al, 0));
    let comp = a.comp(1, be, al).expect("pair composes");
    let x = simplex3(
        a,
        [o, o, op, op],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], h),
            (vec![2, 3], a.id(op)),
            (vec![0, 2], g),
            (vec![1, 3], g),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], be),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], be),
            (vec![0, 1, 3], al),
        ],
        a.id(comp),
    );
    principal_image(f, a, b, &x)
}

/// ω_r(β, α) and ω_l(β, α) for a 1-composable pair of 2-cells.
pub fn omega_cells(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    be: Cell,
    al: Cell,
) -> (Cell, Cell) {
    let (ef, g) = (a.src(al), a.tgt(al));
    let h = a.tgt(be);
    let (o, op) = (a.src_at(al, 0), a.tgt_at(al, 0));
    let comp = a.comp(1, be, al).expect("pair composes");
    let right = simplex3(
        a,
        [o, o, op, op],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], h),
            (vec![2, 3], a.id(op)),
            (vec![0, 2], g),
            (vec![1, 3], ef),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], be),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], comp),
            (vec![0, 1, 3], a.id(ef)),
        ],
        a.id(comp),
    );
    let left = simplex3(
        a,
        [o, o, op, op],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], h),
            (vec![2, 3], a.id(op)),
            (vec![0, 2], ef),
            (vec![1, 3], g),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], comp),
            (vec![0, 2, 3], a.id(ef)),
            (vec![1, 2, 3], be),
            (vec![0, 1, 3], al),
        ],
        a.id(comp),
    );
    (
        principal_image(f, a, b, &right),
        principal_image(f, a, b, &left),
    )
}

/// ε_l(β, α) and ε_r(β, α) for α: f → g, β: g → i∘₀h.
pub fn eps_cells(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    be: Cell,
    al: Cell,
    h: Cell,
    i: Cell,
) -> (Cell, Cell) {
    let (ef, g) = (a.src(al), a.tgt(al));
    let ih = a.comp(0, i, h).expect("legs compose");
    assert_eq!(a.src(be), g);
    assert_eq!(a.tgt(be), ih);
    let (o, op, opp) = (a.src(h), a.tgt(h), a.tgt(i));
    let comp = a.comp(1, be, al).expect("pair composes");
    let left = simplex3(
        a,
        [o, op, opp, opp],
        [
            (vec![0, 1], h),
            (vec![1, 2], i),
            (vec![2, 3], a.id(opp)),
            (vec![0, 2], g),
            (vec![1, 3], i),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], be),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], a.id(i)),
            (vec![0, 1, 3], comp),
        ],
        a.id(comp),
    );
    let right = simplex3(
        a,
        [o, o, op, opp],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], h),
            (vec![2, 3], i),
            (vec![0, 2], h),
            (vec![1, 3], g),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], a.id(h)),
            (vec![0, 2, 3], comp),
            (vec![1, 2, 3], be),
            (vec![0, 1, 3], al),
        ],
        a.id(comp),
    );
    (
        principal_image(f, a, b, &left),
        principal_image(f, a, b, &right),
    )
}

/// The four encodings FΓ₁…FΓ₄ of a 3-cell Γ: α → β.
pub fn gamma3_cells(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    big: Cell,
) -> [Cell; 4] {
    let (al, be) = (a.src(big), a.tgt(big));
    let (ef, g) = (a.src(al), a.tgt(al));
    let (o, op) = (a.src(ef), a.tgt(ef));
    let build = |e02: Cell, e13: Cell, t012: Cell, t023: Cell, t013: Cell, t123: Cell| {
        simplex3(
            a,
            [o, o, op, op],
            [
                (vec![0, 1], a.id(o)),
                (vec![1, 2], g),
                (vec![2, 3], a.id(op)),
                (vec![0, 2], e02),
                (vec![1, 3], e13),
                (vec![0, 3], ef),
            ],
            [
                (vec![0, 1, 2], t012),
                (vec![0, 2, 3], t023),
                (vec![1, 2, 3], t123),
                (vec![0, 1, 3], t013),
            ],
            big,
        )
    };
    let one = build(ef, ef, al, a.id(ef), a.id(ef), be);
    let two = build(ef, g, al, a.id(ef), be, a.id(g));
    let three = build(g, ef, a.id(g), al, a.id(ef), be);
    let four = build(g, g, a.id(g), al, be, a.id(g));
    [
        principal_image(f, a, b, &one),
        principal_image(f, a, b, &two),
        principal_image(f, a, b, &three),
        principal_image(f, a, b, &four),
    ]
}

/// The 2-simplex encoding a composable pair with identity filler.
pub fn comp_triangle(a: &FiniteThreeCat, g: Cell, f: Cell) -> Simplex {
    let gf = a.comp(0, g, f).expect("pair composes");
    Simplex::assemble(
        a,
        2,
        BTreeMap::from([
            (vec![0u8], a.src(f)),
            (vec![1u8], a.tgt(f)),
            (vec![2u8], a.tgt(g)),
            (vec![0u8, 1], f),
            (vec![1u8, 2], g),
            (vec![0u8, 2], gf),
            (vec![0u8, 1, 2], a.id(gf)),
        ]),
    )
    .expect("composition triangle")
}

/// The 3-simplex with identity fillers on a composable triple (h, g, f).
pub fn w_template(a: &FiniteThreeCat, h: Cell, g: Cell, f: Cell) -> Simplex {
    let gf = a.comp(0, g, f).expect("gf");
    let hg = a.comp(0, h, g).expect("hg");
    let hgf = a.comp(0, h, gf).expect("hgf");
    simplex3(
        a,
        [a.src(f), a.tgt(f), a.tgt(g), a.tgt(h)],
        [
            (vec![0, 1], f),
            (vec![1, 2], g),
            (vec![2, 3], h),
            (vec![0, 2], gf),
            (vec![1, 3], hg),
            (vec![0, 3], hgf),
        ],
        [
            (vec![0, 1, 2], a.id(gf)),
            (vec![0, 2, 3], a.id(hgf)),
            (vec![1, 2, 3], a.id(hg)),
            (vec![0, 1, 3], a.id(hgf)),
        ],
        a.id(a.id(hgf)),
    )
}

/// The 3-simplex whose image carries the VR structure cell of (g, α).
pub fn vr_template(a: &FiniteThreeCat, g: Cell, al: Cell) -> Simplex {
    let (f, fp) = (a.src(al), a.tgt(al));
    let gf = a.comp(0, g, f).expect("gf");
    let gfp = a.comp(0, g, fp).expect("gf'");
    let gal = a.comp_promoted(0, g, al).expect("g∘₀α");
    let o = a.src(f);
    simplex3(
        a,
        [o, o, a.tgt(f), a.tgt(g)],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], fp),
            (vec![2, 3], g),
            (vec![0, 2], f),
            (vec![1, 3], gfp),
            (vec![0, 3], gf),
        ],
        [
            (vec![0, 1, 2], al),
            (vec![0, 2, 3], a.id(gf)),
            (vec![1, 2, 3], a.id(gfp)),
            (vec![0, 1, 3], gal),
        ],
        a.id(gal),
    )
}

/// The 3-simplex whose image carries the VL structure cell of (β, f).
pub fn vl_template(a: &FiniteThreeCat, be: Cell, f: Cell) -> Simplex {
    let (g, gp) = (a.src(be), a.tgt(be));
    let gf = a.comp(0, g, f).expect("gf");
    let gpf = a.comp(0, gp, f).expect("g'f");
    let bef = a.comp_promoted(0, be, f).expect("β∘₀f");
    let opp = a.tgt(g);
    simplex3(
        a,
        [a.src(f), a.tgt(f), opp, opp],
        [
            (vec![0, 1], f),
            (vec![1, 2], gp),
            (vec![2, 3], a.id(opp)),
            (vec![0, 2], gpf),
            (vec![1, 3], g),
            (vec![0, 3], gf),
        ],
        [
            (vec![0, 1, 2], a.id(gpf)),
            (vec![0, 2, 3], bef),
            (vec![1, 2, 3], be),
            (vec![0, 1, 3], a.id(gf)),
        ],
        a.id(bef),
    )
}

/// The 3-simplex whose image carries F_LLL(γ) (the third encoding of γ).
pub fn lll_template(a: &FiniteThreeCat, big: Cell) -> Simplex {
    let (al, be) = (a.src(big), a.tgt(big));
    let (ef, g) = (a.src(al), a.tgt(al));
    let o = a.src(ef);
    let op = a.tgt(ef);
    simplex3(
        a,
        [o, o, op, op],
        [
            (vec![0, 1], a.id(o)),
            (vec![1, 2], g),
            (vec![2, 3], a.id(op)),
            (vec![0, 2], g),
            (vec![1, 3], ef),
            (vec![0, 3], ef),
        ],
        [
            (vec![0, 1, 2], a.id(g)),
            (vec![0, 2, 3], al),
            (vec![1, 2, 3], be),
            (vec![0, 1, 3], a.id(ef)),
        ],
        big,
    )
}

/// All named constraint cells extracted for one datum.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConstraintCells {
    pub tau_d: Option<String>,
    pub tau_u: Option<String>,
    pub gamma_l: Option<String>,
    pub gamma_r: Option<String>,
    pub sigma: Option<String>,
    pub eps_l: Option<String>,
    pub eps_r: Option<String>,
    pub omega_l: Option<String>,
    pub omega_r: Option<String>,
    pub f_gamma: Option<[String; 4]>,
}

/// What to extract constraints for.
pub enum Datum {
    /// a 2-cell α
    TwoCell(Cell),
    /// a 2-cell α: f → h∘₀g together with the legs (g, h)
    Triangle(Cell, Cell, Cell),
    /// a 1-composable pair (β, α), with optional legs (h, i) of tgt(β)
    Pair(Cell, Cell, Option<(Cell, Cell)>),
    /// a 3-cell Γ
    ThreeCell(Cell),
}

pub fn extract_constraints(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    datum: &Datum,
) -> ConstraintCells {
    let mut out = ConstraintCells {
        tau_d: None,
        tau_u: None,
        gamma_l: None,
        gamma_r: None,
        sigma: None,
        eps_l: None,
        eps_r: None,
        omega_l: None,
        omega_r: None,
        f_gamma: None,
    };
    let name = |c: Cell| b.name(c).to_string();
    match datum {
        Datum::TwoCell(al) => {
            let (d, u) = tau_cells(f, a, b, *al);
            out.tau_d = Some(name(d));
            out.tau_u = Some(name(u));
        }
        Datum::Triangle(al, g, h) => {
            let (l, r) = gamma_cells(f, a, b, *al, *g, *h);
            out.gamma_l = Some(name(l));
            out.gamma_r = Some(name(r));
        }
        Datum::Pair(be, al, legs) => {
            out.sigma = Some(name(sigma_cell(f, a, b, *be, *al)));
            let (wr, wl) = omega_cells(f, a, b, *be, *al);
            out.omega_r = Some(name(wr));
            out.omega_l = Some(name(wl));
            if let Some((h, i)) = legs {
                let (el, er) = eps_cells(f, a, b, *be, *al, *h, *i);
                out.eps_l = Some(name(el));
                out.eps_r = Some(name(er));
            }
        }
        Datum::ThreeCell(big) => {
            let cells = gamma3_cells(f, a, b, *big);
            out.f_gamma = Some(cells.map(name));
        }
    }
    out
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct OplaxConditionViolation {
    pub condition: u8,
    pub witness: String,
}

/// Checks the three defining conditions of a simplicial oplax 3-morphism,
/// returning every violation. Data with an identity constituent yields a
/// degenerate template whose image is automatically trivial; those instances
/// are skipped.
pub fn simplicial_oplax_violations(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
) -> Vec<OplaxConditionViolation> {
    let mut out = Vec::new();
    for &al in a.cells(2) {
        if a.is_identity(al) {
            continue;
        }
        let (tau_d, _) = tau_cells(f, a, b, al);
        if !b.is_identity(tau_d) {
            out.push(OplaxConditionViolation { condition: 1, witness: a.name(al).into() });
        }
    }
    for &g in a.cells(1) {
        for &h in a.cells(1) {
            if a.tgt(g) != a.src(h) {
                continue;
            }
            let hg = a.comp(0, h, g).expect("total table");
            for &al in a.cells(2) {
                if a.is_identity(al) || a.tgt(al) != hg {
                    continue;
                }
                let (gamma_l, _) = gamma_cells(f, a, b, al, g, h);
                if !b.is_identity(gamma_l) {
                    out.push(OplaxConditionViolation {
                        condition: 2,
                        witness: format!("{} [{} {}]", a.name(al), a.name(g), a.name(h)),
                    });
                }
            }
        }
    }
    for &be in a.cells(2) {
        if a.is_identity(be) {
            continue;
        }
        for &al in a.cells(2) {
            if a.is_identity(al) || a.tgt(al) != a.src(be) {
                continue;
            }
            for &h in a.cells(1) {
                for &i in a.cells(1) {
                    if a.tgt(h) != a.src(i) || a.comp(0, i, h) != Some(a.tgt(be)) {
                        continue;
                    }
                    let (eps_l, _) = eps_cells(f, a, b, be, al, h, i);
                    if !b.is_identity(eps_l) {
                        out.push(OplaxConditionViolation {
                            condition: 3,
                            witness: format!(
                                "{} {} [{} {}]",
                                a.name(be),
                                a.name(al),
                                a.name(h),
                                a.name(i)
                            ),
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn is_simplicial_oplax(
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
) -> bool {
    simplicial_oplax_violations(f, a, b).is_empty()
}

/// Dimension-wise composition, with the middle nerve checked to agree.
pub fn compose_maps(
    g: &SimplicialMap,
    f: &SimplicialMap,
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    b2: &FiniteThreeCat,
    c: &FiniteThreeCat,
) -> Result<SimplicialMap, String> {
    if b != b2 {
        return Err("middle nerve mismatch".to_string());
    }
    Ok(g.compose(a, b, c, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat3::{make_disk, make_invertible_disk3, strict_functors};
    use crate::nerve::SimplicialMap;

    #[test]
    fn nerve_of_strict_functor_has_trivial_constraints() {
        let d2 = make_disk(2);
        let sharp = make_invertible_disk3();
        let us = strict_functors(&d2, &sharp, &|x, y| {
            crate::cat3::disk2_skeleton_constraint(&d2, &sharp, x, y)
        });
        for u in &us {
            let m = SimplicialMap::from_cell_map(&d2, &sharp, u);
            assert!(m.verify(&d2, &sharp).is_ok());
            assert!(is_simplicial_oplax(&m, &d2, &sharp));
            let al = d2.cells(2).iter().find(|c| !d2.is_identity(**c)).copied().unwrap();
            let (td, tu) = tau_cells(&m, &d2, &sharp, al);
            assert!(sharp.is_identity(td) && sharp.is_identity(tu));
        }
    }

    /// The 1-skeleton pin of the case study, at the level of simplices.
    pub(crate) fn pin_one_skeleton(
        a: &FiniteThreeCat,
        b: &FiniteThreeCat,
        k: usize,
        x: &Simplex,
        y: &Simplex,
    ) -> bool {
        match k {
            0 => crate::cat3::disk2_skeleton_constraint(a, b, x.label(&[0]), y.label(&[0])),
            1 => {
                crate::cat3::disk2_skeleton_constraint(a, b, x.label(&[0, 1]), y.label(&[0, 1]))
                    && !b.is_identity(y.label(&[0, 1]))
            }
            _ => true,
        }
    }

    #[test]
    fn case_study_four_maps_two_oplax() {
        let d2 = make_disk(2);
        let sharp = make_invertible_disk3();
        let maps = crate::nerve::enumerate_maps(&d2, &sharp, &|k, x, y| {
            pin_one_skeleton(&d2, &sharp, k, x, y)
        });
        assert_eq!(maps.len(), 4);
        for m in &maps {
            assert!(m.verify(&d2, &sharp).is_ok());
        }
        let oplax: Vec<_> =
            maps.iter().filter(|m| is_simplicial_oplax(m, &d2, &sharp)).collect();
        assert_eq!(oplax.len(), 2);
        // The two non-oplax maps fail precisely condition 1, with the disk's
        // 2-cell as witness.
        for m in maps.iter().filter(|m| !is_simplicial_oplax(m, &d2, &sharp)) {
            let vs = simplicial_oplax_violations(m, &d2, &sharp);
            assert!(vs.iter().any(|v| v.condition == 1));
            // Their tau cells are the non-trivial inverse pair.
            let al = d2.cells(2).iter().find(|c| !d2.is_identity(**c)).copied().unwrap();
            let (td, tu) = tau_cells(m, &d2, &sharp, al);
            assert!(!sharp.is_identity(td) && !sharp.is_identity(tu));
            assert_eq!(sharp.comp(2, tu, td), Some(sharp.id(sharp.src(td))));
        }
        // from_simplicial errors on the exotic maps and succeeds on the
        // nerves of the strict functors.
        for m in &maps {
            let r = crate::oplax::from_simplicial(&d2, &sharp, m);
            assert_eq!(r.is_ok(), is_simplicial_oplax(m, &d2, &sharp));
            if let Ok(f) = r {
                assert!(f.validate().is_valid());
                assert_eq!(&f.to_simplicial().unwrap(), m);
            }
        }
    }

    #[test]
    fn tau_simplex_faces_are_the_two_encodings() {
        // The 0-face of the τ_d template is the α_r triangle and the 3-face
        // is α_l.
        let d2 = make_disk(2);
        let al = d2.cells(2).iter().find(|c| !d2.is_identity(**c)).copied().unwrap();
        let (left, right) = two_cell_simplices(&d2, al);
        let (ef, g) = (d2.src(al), d2.tgt(al));
        let (o, op) = (d2.src(ef), d2.tgt(ef));
        let down = simplex3(
            &d2,
            [o, o, op, op],
            [
                (vec![0, 1], d2.id(o)),
                (vec![1, 2], g),
                (vec![2, 3], d2.id(op)),
                (vec![0, 2], ef),
                (vec![1, 3], ef),
                (vec![0, 3], ef),
            ],
            [
                (vec![0, 1, 2], al),
                (vec![0, 2, 3], d2.id(ef)),
                (vec![1, 2, 3], al),
                (vec![0, 1, 3], d2.id(ef)),
            ],
            d2.id(al),
        );
        assert_eq!(down.face(&d2, 0), right);
        assert_eq!(down.face(&d2, 3), left);
    }

    #[test]
    fn identity_compose_identity() {
        let d2 = make_disk(2);
        let id = SimplicialMap::identity(&d2);
        let composite = compose_maps(&id, &id, &d2, &d2, &d2, &d2).unwrap();
        assert_eq!(composite, id);
        assert!(is_simplicial_oplax(&composite, &d2, &d2));
    }
}
