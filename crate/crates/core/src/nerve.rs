//! The Street nerve of a finite 3-category, up to dimension 4.
//!
//! A k-simplex stores a cell for every strictly increasing tuple of vertices
//! of length ≤ 4: objects, 1-cells, triangle fillers and tetrahedron fillers.
//! Faces are projections, degeneracies insert identities, and the boundary
//! contracts plus the pentagon condition in dimension 4 pin the shape down.
//! By 4-coskeletality this is all of the nerve a 3-category has.

use std::collections::{BTreeMap, HashMap};

use crate::cat3::{Cell, FiniteThreeCat};

pub type Tuple = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: usize,
    labels: BTreeMap<Tuple, Cell>,
}

fn strict_tuples(dim: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    for len in 1..=(dim + 1).min(4) {
        let mut cur: Tuple = Vec::new();
        gen_tuples(dim as u8, len, &mut cur, &mut out);
    }
    out
}

fn gen_tuples(max: u8, len: usize, cur: &mut Tuple, out: &mut Vec<Tuple>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().map(|v| v + 1).unwrap_or(0);
    for v in start..=max {
        cur.push(v);
        gen_tuples(max, len, cur, out);
        cur.pop();
    }
}

impl Simplex {
    /// Assembles and checks a simplex from its label map.
    pub fn assemble(
        cat: &FiniteThreeCat,
        dim: usize,
        labels: BTreeMap<Tuple, Cell>,
    ) -> Result<Simplex, String> {
        assert!(dim <= 4);
        for t in strict_tuples(dim) {
            let c = labels.get(&t).ok_or_else(|| format!("missing label {t:?}"))?;
            if cat.dim(*c) != t.len() - 1 {
                return Err(format!("label {t:?} has wrong dimension"));
            }
        }
        let s = Simplex { dim, labels };
        s.check(cat)?;
        Ok(s)
    }

    fn check(&self, cat: &FiniteThreeCat) -> Result<(), String> {
        for t in strict_tuples(self.dim) {
            match t.len() {
                2 => {
                    let e = self.labels[&t];
                    if cat.src(e) != self.labels[&vec![t[0]]] || cat.tgt(e) != self.labels[&vec![t[1]]] {
                        return Err(format!("edge {t:?} boundary mismatch"));
                    }
                }
                3 => {
                    let f = self.labels[&t];
                    let long = self.labels[&vec![t[0], t[2]]];
                    let legs = cat.chain(
                        0,
                        &[self.labels[&vec![t[1], t[2]]], self.labels[&vec![t[0], t[1]]]],
                    )?;
                    if cat.src(f) != long || cat.tgt(f) != legs {
                        return Err(format!("triangle {t:?} boundary mismatch"));
                    }
                }
                4 => {
                    let h = self.labels[&t];
                    let (s, tt) = self.tetra_boundary(cat, &t)?;
                    if cat.src(h) != s || cat.tgt(h) != tt {
                        return Err(format!("tetrahedron {t:?} boundary mismatch"));
                    }
                }
                _ => {}
            }
        }
        if self.dim == 4 {
            let (lhs, rhs) = self.pentagon_sides(cat)?;
            if lhs != rhs {
                return Err("pentagon condition fails".to_string());
            }
        }
        Ok(())
    }

    /// Boundary pair of a tetrahedron label: source `(e(lm) ∘₀ t(ijl)) ∘₁ t(ilm)`
    /// and target `(t(jlm) ∘₀ e(ij)) ∘₁ t(ijm)`.
    fn tetra_boundary(&self, cat: &FiniteThreeCat, t: &[u8]) -> Result<(Cell, Cell), String> {
        let (i, j, l, m) = (t[0], t[1], t[2], t[3]);
        let e = |a: u8, b: u8| self.labels[&vec![a, b]];
        let tri = |a: u8, b: u8, c: u8| self.labels[&vec![a, b, c]];
        let s = cat.chain(1, &[cat.chain(0, &[e(l, m), tri(i, j, l)])?, tri(i, l, m)])?;
        let tt = cat.chain(1, &[cat.chain(0, &[tri(j, l, m), e(i, j)])?, tri(i, j, m)])?;
        Ok((s, tt))
    }

    /// The two ∘₂-composites of whiskered tetrahedron labels that the
    /// pentagon equates on a 4-simplex.
    pub fn pentagon_sides(&self, cat: &FiniteThreeCat) -> Result<(Cell, Cell), String> {
        let e = |a: u8, b: u8| self.labels[&vec![a, b]];
        let tri = |a: u8, b: u8, c: u8| self.labels[&vec![a, b, c]];
        let h = |a: u8, b: u8, c: u8, d: u8| self.labels[&vec![a, b, c, d]];
        let lhs = cat.chain(
            2,
            &[
                cat.chain(1, &[cat.chain(0, &[tri(2, 3, 4), e(1, 2), e(0, 1)])?, h(0, 1, 2, 4)])?,
                cat.chain(1, &[cat.chain(0, &[e(3, 4), e(2, 3), tri(0, 1, 2)])?, h(0, 2, 3, 4)])?,
            ],
        )?;
        let rhs = cat.chain(
            2,
            &[
                cat.chain(1, &[cat.chain(0, &[h(1, 2, 3, 4), e(0, 1)])?, tri(0, 1, 4)])?,
                cat.chain(1, &[cat.chain(0, &[e(3, 4), tri(1, 2, 3), e(0, 1)])?, h(0, 1, 3, 4)])?,
                cat.chain(1, &[cat.chain(0, &[e(3, 4), h(0, 1, 2, 3)])?, tri(0, 3, 4)])?,
            ],
        )?;
        Ok((lhs, rhs))
    }

    pub fn label(&self, tuple: &[u8]) -> Cell {
        self.labels[&tuple.to_vec()]
    }

    /// Label of a weakly increasing tuple: the iterated identity on the label
    /// of the deduplicated tuple.
    pub fn label_weak(&self, cat: &FiniteThreeCat, tuple: &[u8]) -> Cell {
        let mut dedup: Tuple = Vec::with_capacity(tuple.len());
        for v in tuple {
            if dedup.last() != Some(v) {
                dedup.push(*v);
            }
        }
        cat.id_to(self.labels[&dedup], tuple.len() - 1)
    }

    /// The filler of the full tuple: the cell the simplex principally
    /// encodes. Defined for dimensions ≤ 3.
    pub fn principal(&self, cat: &FiniteThreeCat) -> Cell {
        assert!(self.dim <= 3);
        let full: Tuple = (0..=self.dim as u8).collect();
        self.label_weak(cat, &full)
    }

    /// Reindexing along a monotone map `f: [m] → [dim]`, given by its value
    /// list. Faces and degeneracies are the injective and surjective cases.
    pub fn pullback(&self, cat: &FiniteThreeCat, f: &[u8]) -> Simplex {
        let m = f.len() - 1;
        let mut labels = BTreeMap::new();
        for t in strict_tuples(m) {
            let image: Tuple = t.iter().map(|v| f[*v as usize]).collect();
            labels.insert(t, self.label_weak(cat, &image));
        }
        Simplex { dim: m, labels }
    }

    pub fn face(&self, cat: &FiniteThreeCat, i: usize) -> Simplex {
        assert!(self.dim >= 1 && i <= self.dim);
        let f: Tuple = (0..=self.dim as u8).filter(|v| *v as usize != i).collect();
        self.pullback(cat, &f)
    }

    pub fn degeneracy(&self, cat: &FiniteThreeCat, i: usize) -> Simplex {
        assert!(self.dim <= 3 && i <= self.dim);
        let mut f: Tuple = Vec::new();
        for v in 0..=self.dim as u8 {
            f.push(v);
            if v as usize == i {
                f.push(v);
            }
        }
        self.pullback(cat, &f)
    }

    /// Eilenberg–Zilber decomposition: the unique surjection `π` and
    /// non-degenerate simplex `y` with `x = y·π`.
    pub fn ez_decompose(&self, cat: &FiniteThreeCat) -> (Vec<usize>, Simplex) {
        let mut pi: Vec<usize> = (0..=self.dim).collect();
        let mut y = self.clone();
        'outer: loop {
            for i in 0..y.dim {
                let candidate = y.face(cat, i + 1);
                if candidate.degeneracy(cat, i) == y {
                    for v in pi.iter_mut() {
                        if *v > i {
                            *v -= 1;
                        }
                    }
                    y = candidate;
                    continue 'outer;
                }
            }
            return (pi, y);
        }
    }

    pub fn is_degenerate(&self, cat: &FiniteThreeCat) -> bool {
        self.dim > 0 && self.ez_decompose(cat).1.dim < self.dim
    }
}

/// All k-simplices of the nerve, degenerate ones included, in a
/// deterministic order.
pub fn simplices(cat: &FiniteThreeCat, k: usize) -> Vec<Simplex> {
    let mut out = enumerate(cat, k);
    out.sort();
    out
}

/// Only the non-degenerate k-simplices.
pub fn nondegenerate_simplices(cat: &FiniteThreeCat, k: usize) -> Vec<Simplex> {
    simplices(cat, k).into_iter().filter(|s| !s.is_degenerate(cat)).collect()
}

fn enumerate(cat: &FiniteThreeCat, k: usize) -> Vec<Simplex> {
    match k {
        0 => cat
            .cells(0)
            .iter()
            .map(|o| Simplex { dim: 0, labels: BTreeMap::from([(vec![0u8], *o)]) })
            .collect(),
        1 => cat
            .cells(1)
            .iter()
            .map(|e| {
                Simplex {
                    dim: 1,
                    labels: BTreeMap::from([
                        (vec![0u8], cat.src(*e)),
                        (vec![1u8], cat.tgt(*e)),
                        (vec![0u8, 1], *e),
                    ]),
                }
            })
            .collect(),
        2 => {
            let by_tgt = group_by_tgt(cat, 2);
            let mut out = Vec::new();
            for &e01 in cat.cells(1) {
                for &e12 in cat.cells(1) {
                    if cat.src(e12) != cat.tgt(e01) {
                        continue;
                    }
                    let path = cat.comp(0, e12, e01).expect("total table");
                    for &t in by_tgt.get(&path).map(Vec::as_slice).unwrap_or(&[]) {
                        let e02 = cat.src(t);
                        out.push(Simplex {
                            dim: 2,
                            labels: BTreeMap::from([
                                (vec![0u8], cat.src(e01)),
                                (vec![1u8], cat.tgt(e01)),
                                (vec![2u8], cat.tgt(e12)),
                                (vec![0u8, 1], e01),
                                (vec![1u8, 2], e12),
                                (vec![0u8, 2], e02),
                                (vec![0u8, 1, 2], t),
                            ]),
                        });
                    }
                }
            }
            out
        }
        3 => {
            let mut out = Vec::new();
            let three_by_st = group_three_cells(cat);
            for skel in three_skeletons(cat) {
                let s = skel.tetra_src(cat);
                let t = skel.tetra_tgt(cat);
                for &h in three_by_st.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[]) {
                    let mut labels = skel.labels.clone();
                    labels.insert(vec![0, 1, 2, 3], h);
                    out.push(Simplex { dim: 3, labels });
                }
            }
            out
        }
        4 => enumerate_four(cat),
        _ => panic!("nerve only materialised up to dimension 4"),
    }
}

/// 2-cells grouped by their target 1-cell (resp. 3-cells by boundary pair).
fn group_by_tgt(cat: &FiniteThreeCat, dim: usize) -> HashMap<Cell, Vec<Cell>> {
    let mut m: HashMap<Cell, Vec<Cell>> = HashMap::new();
    for &c in cat.cells(dim) {
        m.entry(cat.tgt(c)).or_default().push(c);
    }
    m
}

fn group_three_cells(cat: &FiniteThreeCat) -> HashMap<(Cell, Cell), Vec<Cell>> {
    let mut m: HashMap<(Cell, Cell), Vec<Cell>> = HashMap::new();
    for &c in cat.cells(3) {
        m.entry((cat.src(c), cat.tgt(c))).or_default().push(c);
    }
    m
}

/// A labelled boundary of a 3-simplex (everything except the tetrahedron).
struct TetraSkeleton {
    labels: BTreeMap<Tuple, Cell>,
}

impl TetraSkeleton {
    fn tetra_src(&self, cat: &FiniteThreeCat) -> Cell {
        let e23 = self.labels[&vec![2u8, 3]];
        let t012 = self.labels[&vec![0u8, 1, 2]];
        let t023 = self.labels[&vec![0u8, 2, 3]];
        cat.chain(1, &[cat.chain(0, &[e23, t012]).unwrap(), t023]).unwrap()
    }
    fn tetra_tgt(&self, cat: &FiniteThreeCat) -> Cell {
        let e01 = self.labels[&vec![0u8, 1]];
        let t123 = self.labels[&vec![1u8, 2, 3]];
        let t013 = self.labels[&vec![0u8, 1, 3]];
        cat.chain(1, &[cat.chain(0, &[t123, e01]).unwrap(), t013]).unwrap()
    }
}

fn three_skeletons(cat: &FiniteThreeCat) -> Vec<TetraSkeleton> {
    let by_tgt = group_by_tgt(cat, 2);
    let empty: Vec<Cell> = Vec::new();
    let fillers = |long: Cell| -> &Vec<Cell> { by_tgt.get(&long).unwrap_or(&empty) };
    let mut out = Vec::new();
    for &e01 in cat.cells(1) {
        for &e12 in cat.cells(1) {
            if cat.src(e12) != cat.tgt(e01) {
                continue;
            }
            for &e23 in cat.cells(1) {
                if cat.src(e23) != cat.tgt(e12) {
                    continue;
                }
                let p012 = cat.comp(0, e12, e01).unwrap();
                let p123 = cat.comp(0, e23, e12).unwrap();
                for &t012 in fillers(p012) {
                    let e02 = cat.src(t012);
                    for &t123 in fillers(p123) {
                        let e13 = cat.src(t123);
                        let p023 = cat.comp(0, e23, e02).unwrap();
                        let p013 = cat.comp(0, e13, e01).unwrap();
                        for &t023 in fillers(p023) {
                            for &t013 in fillers(p013) {
                                if cat.src(t023) != cat.src(t013) {
                                    continue;
                                }
                                let e03 = cat.src(t023);
                                out.push(TetraSkeleton {
                                    labels: BTreeMap::from([
                                        (vec![0u8], cat.src(e01)),
                                        (vec![1u8], cat.tgt(e01)),
                                        (vec![2u8], cat.tgt(e12)),
                                        (vec![3u8], cat.tgt(e23)),
                                        (vec![0u8, 1], e01),
                                        (vec![1u8, 2], e12),
                                        (vec![2u8, 3], e23),
                                        (vec![0u8, 2], e02),
                                        (vec![1u8, 3], e13),
                                        (vec![0u8, 3], e03),
                                        (vec![0u8, 1, 2], t012),
                                        (vec![1u8, 2, 3], t123),
                                        (vec![0u8, 2, 3], t023),
                                        (vec![0u8, 1, 3], t013),
                                    ]),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn enumerate_four(cat: &FiniteThreeCat) -> Vec<Simplex> {
    let by_tgt = group_by_tgt(cat, 2);
    let three_by_st = group_three_cells(cat);
    let empty2: Vec<Cell> = Vec::new();
    let empty3: Vec<Cell> = Vec::new();
    let fillers = |long: Cell| -> &Vec<Cell> { by_tgt.get(&long).unwrap_or(&empty2) };
    let hs = |s: Cell, t: Cell| -> &Vec<Cell> {
        three_by_st.get(&(s, t)).unwrap_or(&empty3)
    };
    let mut out = Vec::new();
    // Edges e(i,i+1), then inner triangles, then the rest, then tetrahedra.
    for &e01 in cat.cells(1) {
        for &e12 in cat.cells(1) {
            if cat.src(e12) != cat.tgt(e01) {
                continue;
            }
            for &e23 in cat.cells(1) {
                if cat.src(e23) != cat.tgt(e12) {
                    continue;
                }
                for &e34 in cat.cells(1) {
                    if cat.src(e34) != cat.tgt(e23) {
                        continue;
                    }
                    for &t012 in fillers(cat.comp(0, e12, e01).unwrap()) {
                        let e02 = cat.src(t012);
                        for &t123 in fillers(cat.comp(0, e23, e12).unwrap()) {
                            let e13 = cat.src(t123);
                            for &t234 in fillers(cat.comp(0, e34, e23).unwrap()) {
                                let e24 = cat.src(t234);
                                for &t023 in fillers(cat.comp(0, e23, e02).unwrap()) {
                                    for &t013 in fillers(cat.comp(0, e13, e01).unwrap()) {
                                        if cat.src(t023) != cat.src(t013) {
                                            continue;
                                        }
                                        let e03 = cat.src(t023);
                                        for &t124 in fillers(cat.comp(0, e24, e12).unwrap()) {
                                            for &t134 in fillers(cat.comp(0, e34, e13).unwrap()) {
                                                if cat.src(t124) != cat.src(t134) {
                                                    continue;
                                                }
                                                let e14 = cat.src(t124);
                                                for &t034 in fillers(cat.comp(0, e34, e03).unwrap())
                                                {
                                                    for &t024 in
                                                        fillers(cat.comp(0, e24, e02).unwrap())
                                                    {
                                                        if cat.src(t034) != cat.src(t024) {
                                                            continue;
                                                        }
                                                        for &t014 in
                                                            fillers(cat.comp(0, e14, e01).unwrap())
                                                        {
                                                            if cat.src(t014) != cat.src(t024) {
                                                                continue;
                                                            }
                                                            collect_four(
                                                                cat,
                                                                [
                                                                    (vec![0u8], cat.src(e01)),
                                                                    (vec![1u8], cat.tgt(e01)),
                                                                    (vec![2u8], cat.tgt(e12)),
                                                                    (vec![3u8], cat.tgt(e23)),
                                                                    (vec![4u8], cat.tgt(e34)),
                                                                    (vec![0u8, 1], e01),
                                                                    (vec![1u8, 2], e12),
                                                                    (vec![2u8, 3], e23),
                                                                    (vec![3u8, 4], e34),
                                                                    (vec![0u8, 2], e02),
                                                                    (vec![1u8, 3], e13),
                                                                    (vec![2u8, 4], e24),
                                                                    (vec![0u8, 3], e03),
                                                                    (vec![1u8, 4], e14),
                                                                    (vec![0u8, 4], cat.src(t014)),
                                                                    (vec![0u8, 1, 2], t012),
                                                                    (vec![1u8, 2, 3], t123),
                                                                    (vec![2u8, 3, 4], t234),
                                                                    (vec![0u8, 2, 3], t023),
                                                                    (vec![0u8, 1, 3], t013),
                                                                    (vec![1u8, 2, 4], t124),
                                                                    (vec![1u8, 3, 4], t134),
                                                                    (vec![0u8, 3, 4], t034),
                                                                    (vec![0u8, 2, 4], t024),
                                                                    (vec![0u8, 1, 4], t014),
                                                                ],
                                                                &hs,
                                                                &mut out,
                                                            );
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn collect_four<'a>(
    cat: &FiniteThreeCat,
    skeleton: [(Tuple, Cell); 25],
    hs: &dyn Fn(Cell, Cell) -> &'a Vec<Cell>,
    out: &mut Vec<Simplex>,
) {
    let labels: BTreeMap<Tuple, Cell> = skeleton.into_iter().collect();
    let partial = Simplex { dim: 4, labels };
    let tetras: [[u8; 4]; 5] =
        [[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]];
    let mut choices: Vec<&Vec<Cell>> = Vec::with_capacity(5);
    for t in &tetras {
        match partial.tetra_boundary(cat, t) {
            Ok((s, tt)) => choices.push(hs(s, tt)),
            Err(_) => return,
        }
    }
    let mut pick = [Cell(0); 5];
    fill_four(cat, &partial, &tetras, &choices, &mut pick, 0, out);
}

fn fill_four(
    cat: &FiniteThreeCat,
    partial: &Simplex,
    tetras: &[[u8; 4]; 5],
    choices: &[&Vec<Cell>],
    pick: &mut [Cell; 5],
    at: usize,
    out: &mut Vec<Simplex>,
) {
    if at == 5 {
        let mut labels = partial.labels.clone();
        for (t, c) in tetras.iter().zip(pick.iter()) {
            labels.insert(t.to_vec(), *c);
        }
        let full = Simplex { dim: 4, labels };
        let (lhs, rhs) = full.pentagon_sides(cat).expect("boundaries matched");
        if lhs == rhs {
            out.push(full);
        }
        return;
    }
    for &h in choices[at] {
        pick[at] = h;
        fill_four(cat, partial, tetras, choices, pick, at + 1, out);
    }
}

/// A simplicial map between nerves, stored on non-degenerate simplices of
/// dimensions 0..=4. Images of degenerate simplices are recomputed through
/// the Eilenberg–Zilber decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub images: Vec<BTreeMap<Simplex, Simplex>>,
}

impl SimplicialMap {
    pub fn new() -> SimplicialMap {
        SimplicialMap { images: vec![BTreeMap::new(); 5] }
    }

    /// The identity map of a nerve.
    pub fn identity(cat: &FiniteThreeCat) -> SimplicialMap {
        let mut m = SimplicialMap::new();
        for k in 0..=4 {
            for s in nondegenerate_simplices(cat, k) {
                m.images[k].insert(s.clone(), s);
            }
        }
        m
    }

    /// The nerve of a cell-wise map of categories (checked elsewhere to be a
    /// strict functor).
    pub fn from_cell_map(
        a: &FiniteThreeCat,
        b: &FiniteThreeCat,
        f: &HashMap<Cell, Cell>,
    ) -> SimplicialMap {
        let mut m = SimplicialMap::new();
        for k in 0..=4 {
            for s in nondegenerate_simplices(a, k) {
                let mut labels = BTreeMap::new();
                for t in strict_tuples(k) {
                    labels.insert(t.clone(), f[&s.label(&t)]);
                }
                let image = Simplex::assemble(b, k, labels)
                    .expect("strict image of a simplex is a simplex");
                m.images[k].insert(s, image);
            }
        }
        m
    }

    pub fn apply(&self, a: &FiniteThreeCat, b: &FiniteThreeCat, x: &Simplex) -> Simplex {
        let (pi, y) = x.ez_decompose(a);
        let fy = self.images[y.dim].get(&y).unwrap_or_else(|| panic!("missing image"));
        if y.dim == x.dim {
            fy.clone()
        } else {
            let f: Tuple = pi.iter().map(|v| *v as u8).collect();
            fy.pullback(b, &f)
        }
    }

    /// Checks totality on non-degenerate simplices and compatibility with all
    /// faces (degeneracies hold by construction of `apply`).
    pub fn verify(&self, a: &FiniteThreeCat, b: &FiniteThreeCat) -> Result<(), String> {
        for k in 0..=4usize {
            for s in nondegenerate_simplices(a, k) {
                let fs = self.images[k]
                    .get(&s)
                    .ok_or_else(|| format!("no image for a non-degenerate {k}-simplex"))?;
                if fs.dim != k {
                    return Err("image dimension mismatch".into());
                }
                fs.check(b)?;
                for i in 0..=k {
                    if k == 0 {
                        continue;
                    }
                    let lhs = self.apply(a, b, &s.face(a, i));
                    let rhs = fs.face(b, i);
                    if lhs != rhs {
                        return Err(format!("face {i} of a {k}-simplex does not commute"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimension-wise composition `self ∘ other`.
    pub fn compose(
        &self,
        _a: &FiniteThreeCat,
        b: &FiniteThreeCat,
        c: &FiniteThreeCat,
        other: &SimplicialMap,
    ) -> SimplicialMap {
        let mut m = SimplicialMap::new();
        for k in 0..=4 {
            for (x, y) in &other.images[k] {
                m.images[k].insert(x.clone(), self.apply(b, c, y));
            }
        }
        m
    }
}

impl Default for SimplicialMap {
    fn default() -> Self {
        SimplicialMap::new()
    }
}

/// JSON form of a simplex: labels keyed by dash-joined vertex tuples.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SimplexJson {
    pub dim: usize,
    pub labels: BTreeMap<String, String>,
}

impl Simplex {
    pub fn to_json(&self, cat: &FiniteThreeCat) -> SimplexJson {
        SimplexJson {
            dim: self.dim,
            labels: self
                .labels
                .iter()
                .map(|(t, c)| {
                    let key =
                        t.iter().map(u8::to_string).collect::<Vec<_>>().join("-");
                    (key, cat.name(*c).to_string())
                })
                .collect(),
        }
    }

    pub fn from_json(cat: &FiniteThreeCat, j: &SimplexJson) -> Result<Simplex, String> {
        let mut labels = BTreeMap::new();
        for (key, name) in &j.labels {
            let tuple: Tuple = key
                .split('-')
                .map(|p| p.parse::<u8>().map_err(|_| format!("bad tuple {key}")))
                .collect::<Result<_, _>>()?;
            let cell = cat.by_name(name).ok_or_else(|| format!("unknown cell {name}"))?;
            labels.insert(tuple, cell);
        }
        Simplex::assemble(cat, j.dim, labels)
    }
}

/// JSON form of a simplicial map: both categories inline plus the images of
/// the non-degenerate simplices.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MapJson {
    pub source: crate::cat3::CatJson,
    pub target: crate::cat3::CatJson,
    pub images: Vec<(SimplexJson, SimplexJson)>,
}

impl SimplicialMap {
    pub fn to_json(&self, a: &FiniteThreeCat, b: &FiniteThreeCat) -> MapJson {
        let mut images = Vec::new();
        for dim_map in &self.images {
            for (x, y) in dim_map {
                images.push((x.to_json(a), y.to_json(b)));
            }
        }
        MapJson { source: a.to_json(), target: b.to_json(), images }
    }

    /// Loads and verifies a map against its embedded categories.
    pub fn from_json(j: &MapJson) -> Result<(FiniteThreeCat, FiniteThreeCat, SimplicialMap), String> {
        let a = FiniteThreeCat::from_json(&j.source).map_err(|e| e.to_string())?;
        let b = FiniteThreeCat::from_json(&j.target).map_err(|e| e.to_string())?;
        let mut m = SimplicialMap::new();
        for (xj, yj) in &j.images {
            let x = Simplex::from_json(&a, xj)?;
            let y = Simplex::from_json(&b, yj)?;
            if x.dim != y.dim {
                return Err("image dimension mismatch".into());
            }
            m.images[x.dim].insert(x, y);
        }
        m.verify(&a, &b)?;
        Ok((a, b, m))
    }
}

/// All simplicial maps from the nerve of `a` to the nerve of `b` (as maps of
/// 4-truncated simplicial sets, which is all there is by 4-coskeletality),
/// found by assigning images of non-degenerate simplices in dimension order.
/// `keep` can prune candidate images.
pub fn enumerate_maps(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    keep: &dyn Fn(usize, &Simplex, &Simplex) -> bool,
) -> Vec<SimplicialMap> {
    let nd: Vec<Vec<Simplex>> = (0..=4).map(|k| nondegenerate_simplices(a, k)).collect();
    let candidates: Vec<Vec<Simplex>> = (0..=4).map(|k| simplices(b, k)).collect();
    let order: Vec<(usize, &Simplex)> =
        nd.iter().enumerate().flat_map(|(k, v)| v.iter().map(move |s| (k, s))).collect();
    let mut out = Vec::new();
    let mut partial = SimplicialMap::new();
    assign_images(a, b, &order, 0, &candidates, keep, &mut partial, &mut out);
    out
}

fn assign_images(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    order: &[(usize, &Simplex)],
    at: usize,
    candidates: &[Vec<Simplex>],
    keep: &dyn Fn(usize, &Simplex, &Simplex) -> bool,
    partial: &mut SimplicialMap,
    out: &mut Vec<SimplicialMap>,
) {
    if at == order.len() {
        out.push(partial.clone());
        return;
    }
    let (k, x) = order[at];
    let face_images: Vec<Simplex> =
        (0..=k).filter(|_| k > 0).map(|i| partial.apply(a, b, &x.face(a, i))).collect();
    'cands: for y in &candidates[k] {
        if !keep(k, x, y) {
            continue;
        }
        for (i, want) in face_images.iter().enumerate() {
            if y.face(b, i) != *want {
                continue 'cands;
            }
        }
        partial.images[k].insert(x.clone(), y.clone());
        assign_images(a, b, order, at + 1, candidates, keep, partial, out);
        partial.images[k].remove(x);
    }
}
