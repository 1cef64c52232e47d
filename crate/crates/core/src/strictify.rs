//! Strictification of finite split-free 1-categories.
//!
//! The strictification keeps the objects; its 1-cells are tuples of
//! composable non-identity arrows (the empty tuple is the identity), and the
//! hom between two tuples is a sum of oriental homs indexed by refinements.
//! Everything is assembled as an explicit 3-truncated cell table, with the
//! dimension-4 oriental cells quotienting the 3-cells, and the quotient
//! certified well-defined on every composite.

use std::collections::HashMap;

use crate::cat3::{Cat3Error, CatBuilder, Cell, FiniteThreeCat, OneCat, UnionFind};
use crate::nu::{self, NuCell};
use crate::oplax::OplaxData;
use crate::orientals::{induced_functor, OrientalHandle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrictifyError {
    #[error("category is not split-free: {0}")]
    NotSplitFree(String),
    #[error("tuple enumeration budget exceeded")]
    Budget,
    #[error("composition escapes the enumerated hom cells: {0}")]
    CapBreach(String),
    #[error("composition not well-defined on 3-cell classes: {0}")]
    QuotientIllDefined(String),
    #[error("{0}")]
    Table(String),
}

impl From<Cat3Error> for StrictifyError {
    fn from(e: Cat3Error) -> Self {
        StrictifyError::Table(e.to_string())
    }
}

/// No pair of non-identity arrows composes to an identity.
pub fn is_split_free(a: &OneCat) -> bool {
    a.comp.values().all(|c| c.is_some())
}

/// Where a 2- or 3-cell lives: source and target tuple indices, the
/// refinement cut list, and the ambient cell of the oriental of the target
/// tuple's length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomRepr {
    pub x: usize,
    pub z: usize,
    pub phi: Vec<usize>,
    pub cell: NuCell,
}

pub struct TildeCat {
    pub cat: FiniteThreeCat,
    pub one: OneCat,
    /// arrow-index tuples per 1-cell; empty tuples are the identities
    pub tuples: Vec<(Vec<usize>, usize)>,
    pub tuple_cells: Vec<Cell>,
    /// representative per 2-/3-cell (for 3-cells, of the class)
    pub repr: HashMap<Cell, HomRepr>,
    /// all members of each 3-cell class
    pub members: HashMap<Cell, Vec<HomRepr>>,
}

fn tuple_name(one: &OneCat, t: &[usize], src: usize) -> String {
    if t.is_empty() {
        format!("[]{}", one.objects[src])
    } else {
        format!("[{}]", t.iter().map(|i| one.arrows[*i].0.clone()).collect::<Vec<_>>().join("|"))
    }
}

/// Full composite of a tuple: `Some(None)` is an identity, `None` means the
/// tuple does not compose (cannot happen for tuples built from the graph).
fn composite_of(one: &OneCat, t: &[usize]) -> Option<Option<usize>> {
    let mut acc: Option<usize> = None;
    for &f in t {
        acc = match acc {
            None => Some(f),
            Some(g) => *one.comp.get(&(f, g))?,
        };
        // A `None` accumulator after the first step encodes an identity
        // composite, which split-freeness rules out before we get here.
        if acc.is_none() {
            return Some(None);
        }
    }
    Some(acc)
}

fn enumerate_tuples(
    one: &OneCat,
    budget: usize,
) -> Result<Vec<(Vec<usize>, usize)>, StrictifyError> {
    let mut out: Vec<(Vec<usize>, usize)> = Vec::new();
    for o in 0..one.objects.len() {
        out.push((Vec::new(), o));
    }
    let mut frontier: Vec<Vec<usize>> = (0..one.arrows.len()).map(|i| vec![i]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in frontier {
            let src = one.arrows[t[0]].1;
            out.push((t.clone(), src));
            if out.len() > budget {
                return Err(StrictifyError::Budget);
            }
            let last_tgt = one.arrows[*t.last().unwrap()].2;
            for (i, arr) in one.arrows.iter().enumerate() {
                if arr.1 == last_tgt {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push(t2);
                }
            }
        }
        frontier = next;
    }
    out.sort();
    Ok(out)
}

/// Strictly increasing cut lists φ(0)=0 < … < φ(ℓ)=n whose blocks of `z`
/// compose to the entries of `x`.
fn refinements(one: &OneCat, x: &[usize], z: &[usize]) -> Vec<Vec<usize>> {
    if x.is_empty() {
        return if z.is_empty() { vec![vec![0]] } else { vec![] };
    }
    if z.len() < x.len() {
        return vec![];
    }
    fn rec(one: &OneCat, x: &[usize], z: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len() - 1;
        if k == x.len() {
            if *cur.last().unwrap() == z.len() {
                out.push(cur.clone());
            }
            return;
        }
        for next in (cur[k] + 1)..=z.len() {
            if composite_of(one, &z[cur[k]..next]) == Some(Some(x[k])) {
                cur.push(next);
                rec(one, x, z, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(one, x, z, &mut vec![0usize], &mut out);
    out
}

fn cuts_name(phi: &[usize]) -> String {
    phi.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn strictify(one: &OneCat) -> Result<TildeCat, StrictifyError> {
    strictify_with_budget(one, 10_000)
}

pub fn strictify_with_budget(
    one: &OneCat,
    budget: usize,
) -> Result<TildeCat, StrictifyError> {
    if !is_split_free(one) {
        let ((g, f), _) = one.comp.iter().find(|(_, v)| v.is_none()).unwrap();
        return Err(StrictifyError::NotSplitFree(format!(
            "{} ∘ {} is an identity",
            one.arrows[*g].0, one.arrows[*f].0
        )));
    }
    let tuples = enumerate_tuples(one, budget)?;
    let tuple_index: HashMap<Vec<usize>, usize> = tuples
        .iter()
        .enumerate()
        .filter(|(_, (t, _))| !t.is_empty())
        .map(|(i, (t, _))| (t.clone(), i))
        .collect();
    let empty_at: HashMap<usize, usize> = tuples
        .iter()
        .enumerate()
        .filter(|(_, (t, _))| t.is_empty())
        .map(|(i, (_, o))| (*o, i))
        .collect();
    let max_len = tuples.iter().map(|(t, _)| t.len()).max().unwrap_or(0);
    let orientals: Vec<OrientalHandle> = (0..=max_len).map(OrientalHandle::standard).collect();
    let levels: Vec<Vec<Vec<NuCell>>> = orientals
        .iter()
        .map(|o| nu::enumerate_by_dim(&o.complex, 4, 1))
        .collect();

    let mut b = CatBuilder::new();
    let objs: Vec<Cell> = one
        .objects
        .iter()
        .map(|o| b.object(o.clone()).unwrap())
        .collect();
    let mut tuple_cells = Vec::with_capacity(tuples.len());
    for (t, src) in &tuples {
        let tgt = t.last().map(|i| one.arrows[*i].2).unwrap_or(*src);
        let c = b.cell(tuple_name(one, t, *src), 1, objs[*src], objs[tgt])?;
        if t.is_empty() {
            b.set_identity(objs[*src], c);
        }
        tuple_cells.push(c);
    }

    // Hom blocks: for every refinement, the oriental cells with non-zero top,
    // by dimension, plus the 4-cells for the quotient.
    struct HomBlock {
        x: usize,
        z: usize,
        phi: Vec<usize>,
        two: Vec<NuCell>,
        three: Vec<NuCell>,
        four: Vec<NuCell>,
    }
    let mut blocks: Vec<HomBlock> = Vec::new();
    for (xi, (x, _)) in tuples.iter().enumerate() {
        if x.is_empty() {
            continue;
        }
        for (zi, (z, _)) in tuples.iter().enumerate() {
            for phi in refinements(one, x, z) {
                let n = z.len();
                let o = &orientals[n];
                let f = o.path_cell(&phi);
                let g = o.path_cell(&(0..=n).collect::<Vec<_>>());
                let pick = |dim: usize| -> Vec<NuCell> {
                    levels[n][dim]
                        .iter()
                        .filter(|c| {
                            !c.is_identity_cell()
                                && c.source_at(1).expect("dim ≥ 2") == f
                                && c.target_at(1).expect("dim ≥ 2") == g
                        })
                        .cloned()
                        .collect()
                };
                blocks.push(HomBlock {
                    x: xi,
                    z: zi,
                    phi,
                    two: pick(2),
                    three: pick(3),
                    four: pick(4),
                });
            }
        }
    }

    type Key = (usize, usize, Vec<usize>, NuCell);
    let mut repr: HashMap<Cell, HomRepr> = HashMap::new();
    let mut members: HashMap<Cell, Vec<HomRepr>> = HashMap::new();
    let mut two_cell_of: HashMap<Key, Cell> = HashMap::new();
    let mut three_cell_of: HashMap<Key, Cell> = HashMap::new();
    for block in &blocks {
        for u in &block.two {
            let name = format!(
                "2({}>{};{};{})",
                tuple_name(one, &tuples[block.x].0, tuples[block.x].1),
                tuple_name(one, &tuples[block.z].0, tuples[block.z].1),
                cuts_name(&block.phi),
                u.top().compact()
            );
            let c = b.cell(name, 2, tuple_cells[block.x], tuple_cells[block.z])?;
            repr.insert(
                c,
                HomRepr { x: block.x, z: block.z, phi: block.phi.clone(), cell: u.clone() },
            );
            two_cell_of.insert((block.x, block.z, block.phi.clone(), u.clone()), c);
        }
    }
    for block in &blocks {
        if block.three.is_empty() {
            continue;
        }
        let index: HashMap<&NuCell, usize> =
            block.three.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut uf = UnionFind::new(block.three.len());
        for four in &block.four {
            let s = four.source().expect("dim 4");
            let t = four.target().expect("dim 4");
            if let (Some(si), Some(ti)) = (index.get(&s), index.get(&t)) {
                uf.union(*si, *ti);
            }
        }
        let mut class_cell: HashMap<usize, Cell> = HashMap::new();
        for (i, w) in block.three.iter().enumerate() {
            let root = uf.find(i);
            let cell = match class_cell.get(&root) {
                Some(c) => *c,
                None => {
                    let wrep = &block.three[root];
                    let s2 = two_cell_of
                        [&(block.x, block.z, block.phi.clone(), wrep.source().expect("dim 3"))];
                    let t2 = two_cell_of
                        [&(block.x, block.z, block.phi.clone(), wrep.target().expect("dim 3"))];
                    let quotiented =
                        (0..block.three.len()).filter(|j| uf.find(*j) == root).count() > 1;
                    let name = format!(
                        "3({}>{};{};{}){}",
                        tuple_name(one, &tuples[block.x].0, tuples[block.x].1),
                        tuple_name(one, &tuples[block.z].0, tuples[block.z].1),
                        cuts_name(&block.phi),
                        wrep.top().compact(),
                        if quotiented { "-class" } else { "" }
                    );
                    let c = b.cell(name, 3, s2, t2)?;
                    class_cell.insert(root, c);
                    repr.insert(
                        c,
                        HomRepr {
                            x: block.x,
                            z: block.z,
                            phi: block.phi.clone(),
                            cell: wrep.clone(),
                        },
                    );
                    c
                }
            };
            members
                .entry(cell)
                .or_default()
                .push(HomRepr { x: block.x, z: block.z, phi: block.phi.clone(), cell: w.clone() });
            three_cell_of.insert((block.x, block.z, block.phi.clone(), w.clone()), cell);
        }
    }
    b.complete_identities()?;

    // Give identity cells hom representations, so that composition is
    // computed uniformly through the oriental formulas.
    for (ti, tcell) in tuple_cells.iter().enumerate() {
        let n = tuples[ti].0.len();
        let path = orientals[n].path_cell(&(0..=n).collect::<Vec<_>>());
        let phi: Vec<usize> = (0..=n).collect();
        let id2 = b.id_to(*tcell, 2).expect("identities complete");
        repr.insert(id2, HomRepr { x: ti, z: ti, phi: phi.clone(), cell: path.identity() });
        let id3 = b.id_to(*tcell, 3).expect("identities complete");
        repr.insert(id3, HomRepr { x: ti, z: ti, phi, cell: path.identity().identity() });
    }
    for c in b.cells_of_dim(2) {
        if let Some(h) = repr.get(&c).cloned() {
            let idc = b.id_to(c, 3).expect("identities complete");
            repr.entry(idc).or_insert_with(|| HomRepr {
                x: h.x,
                z: h.z,
                phi: h.phi,
                cell: h.cell.identity(),
            });
        }
    }
    // Members of singleton classes and identities, for certification.
    for c in b.cells_of_dim(3) {
        if let Some(h) = repr.get(&c) {
            members.entry(c).or_insert_with(|| vec![h.clone()]);
        }
    }

    // Resolver: a computed ambient cell back to a table cell.
    let resolve = |h: &HomRepr| -> Result<Cell, StrictifyError> {
        let key = (h.x, h.z, h.phi.clone(), h.cell.clone());
        match h.cell.dim {
            2 => {
                if h.cell.is_identity_cell() {
                    Ok(b.id_to(tuple_cells[h.z], 2).expect("identities complete"))
                } else {
                    two_cell_of
                        .get(&key)
                        .copied()
                        .ok_or_else(|| StrictifyError::CapBreach(h.cell.name()))
                }
            }
            3 => {
                if h.cell.is_identity_cell() {
                    let lower = HomRepr {
                        x: h.x,
                        z: h.z,
                        phi: h.phi.clone(),
                        cell: h.cell.source().expect("dim 3"),
                    };
                    let inner = if lower.cell.is_identity_cell() {
                        b.id_to(tuple_cells[h.z], 2).expect("identities complete")
                    } else {
                        two_cell_of
                            .get(&(lower.x, lower.z, lower.phi.clone(), lower.cell.clone()))
                            .copied()
                            .ok_or_else(|| StrictifyError::CapBreach(lower.cell.name()))?
                    };
                    Ok(b.id_to(inner, 3).expect("identities complete"))
                } else {
                    three_cell_of
                        .get(&key)
                        .copied()
                        .ok_or_else(|| StrictifyError::CapBreach(h.cell.name()))
                }
            }
            _ => Err(StrictifyError::Table("resolver on wrong dimension".into())),
        }
    };

    // Composite of two hom representations at level j; ambient dimensions
    // must agree.
    let tuples_ref = &tuples;
    let compose_repr = |j: usize, v: &HomRepr, u: &HomRepr| -> Result<HomRepr, StrictifyError> {
        match j {
            2 => {
                let cell = v
                    .cell
                    .compose(&u.cell, 2)
                    .map_err(|e| StrictifyError::Table(e.to_string()))?;
                Ok(HomRepr { x: u.x, z: u.z, phi: u.phi.clone(), cell })
            }
            1 => {
                // u: x ⟹ y with cuts φ in O_m, v: y ⟹ z with cuts ψ in O_n.
                let pushed = induced_functor(&v.phi, &u.cell);
                let cell = v
                    .cell
                    .compose(&pushed, 1)
                    .map_err(|e| StrictifyError::Table(e.to_string()))?;
                let phi: Vec<usize> = u.phi.iter().map(|k| v.phi[*k]).collect();
                Ok(HomRepr { x: u.x, z: v.z, phi, cell })
            }
            0 => {
                let shift = tuples_ref[u.z].0.len();
                let map: Vec<usize> = (0..=tuples_ref[v.z].0.len()).map(|k| k + shift).collect();
                let shifted = induced_functor(&map, &v.cell);
                let cell = shifted
                    .compose(&u.cell, 0)
                    .map_err(|e| StrictifyError::Table(e.to_string()))?;
                let mut conc_x = tuples_ref[u.x].0.clone();
                conc_x.extend_from_slice(&tuples_ref[v.x].0);
                let mut conc_z = tuples_ref[u.z].0.clone();
                conc_z.extend_from_slice(&tuples_ref[v.z].0);
                let xi = if conc_x.is_empty() {
                    empty_at[&tuples_ref[u.x].1]
                } else {
                    tuple_index[&conc_x]
                };
                let zi = if conc_z.is_empty() {
                    empty_at[&tuples_ref[u.z].1]
                } else {
                    tuple_index[&conc_z]
                };
                let mut phi = u.phi.clone();
                phi.extend(v.phi.iter().skip(1).map(|k| k + shift));
                Ok(HomRepr { x: xi, z: zi, phi, cell })
            }
            _ => Err(StrictifyError::Table("bad level".into())),
        }
    };

    // 1-cell composition: concatenation.
    let mut comp_entries: Vec<(usize, Cell, Cell, Cell)> = Vec::new();
    for (xi, (xt, xs)) in tuples.iter().enumerate() {
        let x_tgt = xt.last().map(|i| one.arrows[*i].2).unwrap_or(*xs);
        for (yi, (yt, ys)) in tuples.iter().enumerate() {
            if *ys != x_tgt {
                continue;
            }
            let mut conc = xt.clone();
            conc.extend_from_slice(yt);
            let out = if conc.is_empty() {
                tuple_cells[empty_at[xs]]
            } else {
                tuple_cells[tuple_index[&conc]]
            };
            comp_entries.push((0, tuple_cells[yi], tuple_cells[xi], out));
        }
    }
    // 2-cell composition at levels 0 and 1.
    let two_cells = b.cells_of_dim(2);
    for &v in &two_cells {
        for &u in &two_cells {
            for j in 0..2usize {
                if b.src_at(v, j) != b.tgt_at(u, j) {
                    continue;
                }
                let h = compose_repr(j, &repr[&v], &repr[&u])?;
                comp_entries.push((j, v, u, resolve(&h)?));
            }
        }
    }
    // 3-cell composition at levels 0, 1 and 2, certified on all class
    // members.
    let three_cells = b.cells_of_dim(3);
    for &v in &three_cells {
        for &u in &three_cells {
            for j in 0..3usize {
                if b.src_at(v, j) != b.tgt_at(u, j) {
                    continue;
                }
                let mut chosen: Option<Cell> = None;
                for hv in members.get(&v).into_iter().flatten() {
                    for hu in members.get(&u).into_iter().flatten() {
                        let h = compose_repr(j, hv, hu)?;
                        let out = resolve(&h)?;
                        match chosen {
                            None => chosen = Some(out),
                            Some(prev) if prev != out => {
                                return Err(StrictifyError::QuotientIllDefined(format!(
                                    "j={} {:?} {:?}",
                                    j, hv.cell.name(), hu.cell.name()
                                )))
                            }
                            _ => {}
                        }
                    }
                }
                comp_entries.push((j, v, u, chosen.expect("members are non-empty")));
            }
        }
    }
    for (j, x, y, z) in comp_entries {
        b.set_comp(j, x, y, z);
    }
    b.complete_unit_composites();
    let cat = b.build()?;
    Ok(TildeCat { cat, one: one.clone(), tuples, tuple_cells, repr, members })
}

/// The counit on objects and 1-cells: a tuple maps to its full composite.
/// Returns, per 1-cell of the strictification, the arrow of `A` it collapses
/// to (`None` encodes an identity).
pub fn epsilon(t: &TildeCat) -> HashMap<Cell, Option<usize>> {
    let mut out = HashMap::new();
    for (i, (tup, _)) in t.tuples.iter().enumerate() {
        let c = composite_of(&t.one, tup).expect("tuples compose");
        out.insert(t.tuple_cells[i], c);
    }
    out
}

/// ε is functorial and induces, per hom-set, a bijection from 2-connected
/// classes of 1-cells onto the arrows of `A`.
pub fn epsilon_is_iso_on_tau1(t: &TildeCat) -> bool {
    let eps = epsilon(t);
    // Functoriality on concatenation.
    for xc in &t.tuple_cells {
        for yc in &t.tuple_cells {
            if t.cat.src_at(*yc, 0) != t.cat.tgt_at(*xc, 0) {
                continue;
            }
            let comp = t.cat.comp(0, *yc, *xc).expect("total");
            let mut tup = Vec::new();
            if let Some(f) = eps[xc] {
                tup.push(f);
            }
            if let Some(g) = eps[yc] {
                tup.push(g);
            }
            if composite_of(&t.one, &tup).expect("composable") != eps[&comp] {
                return false;
            }
        }
    }
    // Union-find of 1-cells along 2-cells.
    let n = t.tuple_cells.len();
    let pos: HashMap<Cell, usize> =
        t.tuple_cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut uf = UnionFind::new(n);
    for c in t.cat.cells(2) {
        let (s, tt) = (t.cat.src(*c), t.cat.tgt(*c));
        uf.union(pos[&s], pos[&tt]);
    }
    // Per hom-set: classes ↔ arrows (plus the identity class).
    for a in 0..t.one.objects.len() {
        for b in 0..t.one.objects.len() {
            let in_hom: Vec<usize> = (0..n)
                .filter(|i| {
                    let (tup, src) = &t.tuples[*i];
                    let tgt = tup.last().map(|k| t.one.arrows[*k].2).unwrap_or(*src);
                    *src == a && tgt == b
                })
                .collect();
            let mut classes = std::collections::BTreeMap::new();
            for i in &in_hom {
                classes
                    .entry(uf.find(*i))
                    .or_insert_with(Vec::new)
                    .push(eps[&t.tuple_cells[*i]]);
            }
            let mut targets = std::collections::BTreeSet::new();
            for (_, values) in classes {
                let first = values[0];
                if values.iter().any(|v| *v != first) {
                    return false; // ε not constant on a connected class
                }
                if !targets.insert(first) {
                    return false; // two classes hit the same arrow
                }
            }
            let mut expected = std::collections::BTreeSet::new();
            for (i, arr) in t.one.arrows.iter().enumerate() {
                if arr.1 == a && arr.2 == b {
                    expected.insert(Some(i));
                }
            }
            if a == b {
                expected.insert(None);
            }
            if targets != expected {
                return false;
            }
        }
    }
    true
}

/// The unit: the normalised oplax 3-functor from `A` (embedded) to the
/// strictification, singleton tuples on arrows and unique oriental fillers
/// on composites.
pub fn eta(t: &TildeCat) -> Result<OplaxData, StrictifyError> {
    let a = t.one.embed()?;
    let til = &t.cat;
    let obj = |i: usize| til.by_name(&t.one.objects[i]).expect("object kept");
    let f_dot: std::collections::BTreeMap<Cell, Cell> = (0..t.one.objects.len())
        .map(|i| (a.by_name(&t.one.objects[i]).unwrap(), obj(i)))
        .collect();
    let arrow_cell = |i: usize| -> Cell {
        let idx = t
            .tuples
            .iter()
            .position(|(tup, _)| tup.as_slice() == [i])
            .expect("singleton tuple");
        t.tuple_cells[idx]
    };
    let mut f_l = std::collections::BTreeMap::new();
    for &c in a.cells(1) {
        if a.is_identity(c) {
            f_l.insert(c, til.id(f_dot[&a.src(c)]));
        } else {
            let i = t.one.arrows.iter().position(|(n, _, _)| n == a.name(c)).unwrap();
            f_l.insert(c, arrow_cell(i));
        }
    }
    // Structural cells: the unique oriental fillers.
    let hom2 = |x: Cell, z: Cell| -> Result<Cell, StrictifyError> {
        let cands: Vec<Cell> = til
            .cells(2)
            .iter()
            .filter(|c| til.src(**c) == x && til.tgt(**c) == z)
            .copied()
            .collect();
        if cands.len() != 1 {
            return Err(StrictifyError::Table(format!(
                "expected a unique 2-cell {} ⟹ {}, found {}",
                til.name(x),
                til.name(z),
                cands.len()
            )));
        }
        Ok(cands[0])
    };
    let mut f_v = std::collections::BTreeMap::new();
    for &g in a.cells(1) {
        for &f in a.cells(1) {
            if a.tgt(f) != a.src(g) {
                continue;
            }
            let gf = a.comp(0, g, f).expect("total");
            let v = if a.is_identity(f) || a.is_identity(g) {
                til.id(f_l[&gf])
            } else {
                let target = til.comp(0, f_l[&g], f_l[&f]).expect("concatenation");
                hom2(f_l[&gf], target)?
            };
            f_v.insert((g, f), v);
        }
    }
    let mut f_w = std::collections::BTreeMap::new();
    for &h in a.cells(1) {
        for &g in a.cells(1) {
            if a.tgt(g) != a.src(h) {
                continue;
            }
            for &f in a.cells(1) {
                if a.tgt(f) != a.src(g) {
                    continue;
                }
                let gf = a.comp(0, g, f).expect("total");
                let hg = a.comp(0, h, g).expect("total");
                let w = if a.is_identity(f) || a.is_identity(g) || a.is_identity(h) {
                    let pair = if a.is_identity(f) {
                        f_v[&(h, g)]
                    } else if a.is_identity(g) {
                        f_v[&(h, gf)]
                    } else {
                        f_v[&(g, f)]
                    };
                    til.id(pair)
                } else {
                    // The unique 3-cell between the two pasted fillers.
                    let src3 = til.chain(1, &[
                        til.chain(0, &[f_l[&h], f_v[&(g, f)]]).map_err(StrictifyError::Table)?,
                        f_v[&(h, gf)],
                    ]).map_err(StrictifyError::Table)?;
                    let tgt3 = til.chain(1, &[
                        til.chain(0, &[f_v[&(h, g)], f_l[&f]]).map_err(StrictifyError::Table)?,
                        f_v[&(hg, f)],
                    ]).map_err(StrictifyError::Table)?;
                    let cands: Vec<Cell> = til
                        .cells(3)
                        .iter()
                        .filter(|c| til.src(**c) == src3 && til.tgt(**c) == tgt3)
                        .copied()
                        .collect();
                    if cands.len() != 1 {
                        return Err(StrictifyError::Table(format!(
                            "expected a unique 3-cell filler, found {}",
                            cands.len()
                        )));
                    }
                    cands[0]
                };
                f_w.insert((h, g, f), w);
            }
        }
    }
    let f_ll: std::collections::BTreeMap<Cell, Cell> =
        a.cells(2).iter().map(|x| (*x, til.id(f_l[&a.src(*x)]))).collect();
    let f_lll: std::collections::BTreeMap<Cell, Cell> =
        a.cells(3).iter().map(|x| (*x, til.id(f_ll[&a.src(*x)]))).collect();
    let mut f_vr = std::collections::BTreeMap::new();
    for &g in a.cells(1) {
        for &al in a.cells(2) {
            if a.tgt_at(al, 0) == a.src(g) {
                f_vr.insert((g, al), til.id(f_v[&(g, a.src(al))]));
            }
        }
    }
    let mut f_vl = std::collections::BTreeMap::new();
    for &be in a.cells(2) {
        for &f in a.cells(1) {
            if a.tgt(f) == a.src_at(be, 0) {
                f_vl.insert((be, f), til.id(f_v[&(a.src(be), f)]));
            }
        }
    }
    Ok(OplaxData {
        source: a,
        target: til.clone(),
        f_dot,
        f_l,
        f_ll,
        f_lll,
        f_v,
        f_w,
        f_vr,
        f_vl,
    })
}

/// An explicit cell isomorphism between the strictification of `[n]` and the
/// truncated oriental of `λΔⁿ`, if one exists under the canonical vertex
/// identification.
pub fn iso_with_truncation(
    t: &TildeCat,
    tr: &crate::cat3::Truncation,
) -> Option<HashMap<Cell, Cell>> {
    let mut map: HashMap<Cell, Cell> = HashMap::new();
    // Objects: matched by name (both sides use the vertex indices).
    for &o in t.cat.cells(0) {
        let c = NuCell::object(crate::chains::Chain::generator(t.cat.name(o), 0));
        map.insert(o, *tr.cell_of.get(&c)?);
    }
    // 1-cells: a tuple of arrows i-j becomes the path through its vertices.
    for (i, (tup, src)) in t.tuples.iter().enumerate() {
        let mut vertices = vec![*src];
        for k in tup {
            vertices.push(t.one.arrows[*k].2);
        }
        let vertices: Vec<usize> = vertices
            .iter()
            .map(|v| t.one.objects[*v].parse::<usize>().ok())
            .collect::<Option<_>>()?;
        let n = vertices.len() - 1;
        let path = OrientalHandle::standard(n).path_cell(&(0..=n).collect::<Vec<_>>());
        let embedded = induced_functor(&vertices, &path);
        map.insert(t.tuple_cells[i], *tr.cell_of.get(&embedded)?);
    }
    // 2- and 3-cells: push the oriental representative along the vertex map
    // of the target tuple.
    for dim in 2..=3usize {
        for &c in t.cat.cells(dim) {
            let image = if t.cat.is_identity(c) {
                let base = map[&t.cat.identity_base(c)];
                tr.cat.id_to(base, dim)
            } else {
                let h = t.repr.get(&c)?;
                let (ztup, zsrc) = &t.tuples[h.z];
                let mut vertices = vec![*zsrc];
                for k in ztup {
                    vertices.push(t.one.arrows[*k].2);
                }
                let vertices: Vec<usize> = vertices
                    .iter()
                    .map(|v| t.one.objects[*v].parse::<usize>().ok())
                    .collect::<Option<_>>()?;
                let pushed = induced_functor(&vertices, &h.cell);
                *tr.cell_of.get(&pushed)?
            };
            map.insert(c, image);
        }
    }
    // The map must be a bijective strict functor.
    for dim in 0..=3usize {
        let mut seen = std::collections::HashSet::new();
        if t.cat.cells(dim).len() != tr.cat.cells(dim).len() {
            return None;
        }
        for &c in t.cat.cells(dim) {
            if !seen.insert(map[&c]) {
                return None;
            }
        }
    }
    for d in 1..=3usize {
        for &x in t.cat.cells(d) {
            if map[&t.cat.src(x)] != tr.cat.src(map[&x]) || map[&t.cat.tgt(x)] != tr.cat.tgt(map[&x]) {
                return None;
            }
            for j in 0..d {
                for &y in t.cat.cells(d) {
                    if let Some(z) = t.cat.comp(j, x, y) {
                        if tr.cat.comp(j, map[&x], map[&y]) != Some(map[&z]) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    Some(map)
}

/// Universal property at desk scale: precomposition with the unit is a
/// bijection from strict 3-functors out of the strictification onto
/// simplicial maps out of the nerve of `A`.
pub fn check_universal_property(
    one: &OneCat,
    b: &FiniteThreeCat,
) -> Result<bool, StrictifyError> {
    let t = strictify(one)?;
    let a3 = one.embed()?;
    let eta_map = eta(&t)?
        .to_simplicial()
        .map_err(StrictifyError::Table)?;
    let stricts = crate::cat3::strict_functors(&t.cat, b, &|_, _| true);
    let all_maps = crate::nerve::enumerate_maps(&a3, b, &|_, _, _| true);
    let mut images = std::collections::BTreeSet::new();
    for u in &stricts {
        let nu_map = crate::nerve::SimplicialMap::from_cell_map(&t.cat, b, u);
        let composite = nu_map.compose(&a3, &t.cat, b, &eta_map);
        images.insert(format!("{composite:?}"));
    }
    let all: std::collections::BTreeSet<String> =
        all_maps.iter().map(|m| format!("{m:?}")).collect();
    Ok(images.len() == stricts.len() && images == all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::Adc;
    use crate::cat3::truncation_from_adc;

    #[test]
    fn split_free_detection() {
        assert!(is_split_free(&OneCat::total_order(3)));
        // One object, an involution g with g² = id.
        let invol = OneCat {
            objects: vec!["x".into()],
            arrows: vec![("g".into(), 0, 0)],
            comp: std::collections::BTreeMap::from([((0, 0), None)]),
        };
        assert!(!is_split_free(&invol));
        assert!(matches!(strictify(&invol), Err(StrictifyError::NotSplitFree(_))));
        // r ∘ s = id, s ∘ r ≠ id.
        let retract = OneCat {
            objects: vec!["x".into(), "y".into()],
            arrows: vec![("s".into(), 0, 1), ("r".into(), 1, 0), ("e".into(), 1, 1)],
            comp: std::collections::BTreeMap::from([
                ((1, 0), None),
                ((0, 1), Some(2)),
                ((2, 2), Some(2)),
                ((1, 2), Some(1)),
                ((2, 0), Some(0)),
            ]),
        };
        assert!(!is_split_free(&retract));
    }

    #[test]
    fn strictify_segment() {
        let t = strictify(&OneCat::total_order(1)).unwrap();
        assert!(t.cat.validate().is_valid());
        assert_eq!(t.cat.count_nonidentity(0), 2);
        assert_eq!(t.cat.count_nonidentity(1), 1);
        assert_eq!(t.cat.count_nonidentity(2), 0);
        assert_eq!(t.cat.count_nonidentity(3), 0);
    }

    #[test]
    fn strictify_triangle_matches_oriental() {
        let t = strictify(&OneCat::total_order(2)).unwrap();
        assert!(t.cat.validate().is_valid());
        // 1-cells 0→2: the short tuple and the two-step tuple.
        let homs: Vec<&str> = t
            .tuples
            .iter()
            .enumerate()
            .filter(|(_, (tup, src))| {
                *src == 0 && tup.last().map(|i| t.one.arrows[*i].2) == Some(2)
            })
            .map(|(i, _)| t.cat.name(t.tuple_cells[i]))
            .collect();
        assert_eq!(homs.len(), 2);
        assert_eq!(t.cat.count_nonidentity(2), 1);
        let tr = truncation_from_adc(&Adc::simplex_complex(2), 1).unwrap();
        assert!(iso_with_truncation(&t, &tr).is_some());
    }

    #[test]
    fn strictify_tetrahedron_matches_oriental() {
        let t = strictify(&OneCat::total_order(3)).unwrap();
        assert!(t.cat.validate().is_valid());
        let tr = truncation_from_adc(&Adc::simplex_complex(3), 1).unwrap();
        assert!(iso_with_truncation(&t, &tr).is_some());
    }

    #[test]
    fn epsilon_collapses_tuples() {
        let t = strictify(&OneCat::total_order(2)).unwrap();
        let eps = epsilon(&t);
        for (i, (tup, _)) in t.tuples.iter().enumerate() {
            match tup.len() {
                0 => assert_eq!(eps[&t.tuple_cells[i]], None),
                1 => assert_eq!(eps[&t.tuple_cells[i]], Some(tup[0])),
                _ => {
                    // (g, f) lands on the same arrow as (g∘f).
                    let whole = composite_of(&t.one, tup).unwrap();
                    assert_eq!(eps[&t.tuple_cells[i]], whole);
                }
            }
        }
        assert!(epsilon_is_iso_on_tau1(&t));
    }

    #[test]
    fn eta_on_small_posets() {
        // [1]: strict (no composites to laxify).
        let t1 = strictify(&OneCat::total_order(1)).unwrap();
        let e1 = eta(&t1).unwrap();
        assert!(e1.validate().is_valid());
        assert!(e1.f_v.values().all(|v| t1.cat.is_identity(*v)));
        // [2]: the single composable pair gets the unique hom 2-cell.
        let t2 = strictify(&OneCat::total_order(2)).unwrap();
        let e2 = eta(&t2).unwrap();
        assert!(e2.validate().is_valid());
        assert_eq!(
            e2.f_v.values().filter(|v| !t2.cat.is_identity(**v)).count(),
            1
        );
    }
}
