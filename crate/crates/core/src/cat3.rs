//! Finite strict 3-categories as explicit cell tables.
//!
//! Cells are interned; `comp` is a total table over composable pairs. The
//! validator checks globularity, identity, unit, associativity and exchange
//! laws exhaustively (with an optional sampling bound for large tables).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::adc::Adc;
use crate::nu::{self, NuCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Cat3Error {
    #[error("duplicate cell name {0}")]
    DuplicateName(String),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("boundary of {0} has the wrong dimension")]
    BadBoundary(String),
    #[error("missing identity for {0}")]
    MissingIdentity(String),
    #[error("missing composite at j={j} of {x} and {y}")]
    MissingComposite { j: usize, x: String, y: String },
    #[error("composition not well-defined on 3-cell classes: {0}")]
    QuotientIllDefined(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub witness: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CatReport {
    pub violations: Vec<Violation>,
}

impl CatReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteThreeCat {
    names: Vec<String>,
    dims: Vec<u8>,
    srcs: Vec<u32>,
    tgts: Vec<u32>,
    ids_up: Vec<u32>,
    is_id: Vec<bool>,
    by_dim: [Vec<Cell>; 4],
    by_name: HashMap<String, Cell>,
    comp: HashMap<(u8, u32, u32), u32>,
}

pub struct CatBuilder {
    names: Vec<String>,
    dims: Vec<u8>,
    srcs: Vec<u32>,
    tgts: Vec<u32>,
    ids_up: Vec<u32>,
    by_name: HashMap<String, Cell>,
    comp: HashMap<(u8, u32, u32), u32>,
}

impl Default for CatBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl CatBuilder {
    pub fn new() -> CatBuilder {
        CatBuilder {
            names: Vec::new(),
            dims: Vec::new(),
            srcs: Vec::new(),
            tgts: Vec::new(),
            ids_up: Vec::new(),
            by_name: HashMap::new(),
            comp: HashMap::new(),
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> Result<Cell, Cat3Error> {
        self.add(name.into(), 0, None, None)
    }

    pub fn cell(
        &mut self,
        name: impl Into<String>,
        dim: usize,
        src: Cell,
        tgt: Cell,
    ) -> Result<Cell, Cat3Error> {
        self.add(name.into(), dim, Some(src), Some(tgt))
    }

    fn add(
        &mut self,
        name: String,
        dim: usize,
        src: Option<Cell>,
        tgt: Option<Cell>,
    ) -> Result<Cell, Cat3Error> {
        if self.by_name.contains_key(&name) {
            return Err(Cat3Error::DuplicateName(name));
        }
        let c = Cell(self.names.len() as u32);
        if dim > 0 {
            let (s, t) = (src.unwrap(), tgt.unwrap());
            if self.dims[s.0 as usize] as usize + 1 != dim || self.dims[t.0 as usize] as usize + 1 != dim {
                return Err(Cat3Error::BadBoundary(name));
            }
            self.srcs.push(s.0);
            self.tgts.push(t.0);
        } else {
            self.srcs.push(c.0);
            self.tgts.push(c.0);
        }
        self.names.push(name.clone());
        self.dims.push(dim as u8);
        self.ids_up.push(u32::MAX);
        self.by_name.insert(name, c);
        Ok(c)
    }

    /// Declares `ix` to be the identity cell of `x`.
    pub fn set_identity(&mut self, x: Cell, ix: Cell) {
        self.ids_up[x.0 as usize] = ix.0;
    }

    /// Adds the identity of `x` as a fresh cell named `1[x]`.
    pub fn identity(&mut self, x: Cell) -> Result<Cell, Cat3Error> {
        let dim = self.dims[x.0 as usize] as usize;
        let name = format!("1[{}]", self.names[x.0 as usize]);
        let ix = self.cell(name, dim + 1, x, x)?;
        self.set_identity(x, ix);
        Ok(ix)
    }

    /// Adds identity cells all the way to dimension 3 for every cell that
    /// lacks one.
    pub fn complete_identities(&mut self) -> Result<(), Cat3Error> {
        for dim in 0..3 {
            for i in 0..self.names.len() {
                if self.dims[i] as usize == dim && self.ids_up[i] == u32::MAX {
                    self.identity(Cell(i as u32))?;
                }
            }
        }
        Ok(())
    }

    pub fn set_comp(&mut self, j: usize, x: Cell, y: Cell, out: Cell) {
        self.comp.insert((j as u8, x.0, y.0), out.0);
    }

    pub fn dim_of(&self, c: Cell) -> usize {
        self.dims[c.0 as usize] as usize
    }

    pub fn src_at(&self, mut c: Cell, j: usize) -> Cell {
        while self.dim_of(c) > j {
            c = Cell(self.srcs[c.0 as usize]);
        }
        c
    }

    pub fn tgt_at(&self, mut c: Cell, j: usize) -> Cell {
        while self.dim_of(c) > j {
            c = Cell(self.tgts[c.0 as usize]);
        }
        c
    }

    pub fn id_to(&self, mut c: Cell, dim: usize) -> Option<Cell> {
        while self.dim_of(c) < dim {
            let up = self.ids_up[c.0 as usize];
            if up == u32::MAX {
                return None;
            }
            c = Cell(up);
        }
        Some(c)
    }

    /// Cells of the given dimension added so far, in insertion order.
    pub fn cells_of_dim(&self, dim: usize) -> Vec<Cell> {
        (0..self.names.len())
            .filter(|i| self.dims[*i] as usize == dim)
            .map(|i| Cell(i as u32))
            .collect()
    }

    /// Fills every composite forced by the unit laws: composing with the
    /// iterated identity of the matching boundary.
    pub fn complete_unit_composites(&mut self) {
        let n = self.names.len();
        for xi in 0..n {
            let x = Cell(xi as u32);
            let d = self.dim_of(x);
            for j in 0..d {
                if let Some(unit) = self.id_to(self.src_at(x, j), d) {
                    self.comp.entry((j as u8, x.0, unit.0)).or_insert(x.0);
                }
                if let Some(unit) = self.id_to(self.tgt_at(x, j), d) {
                    self.comp.entry((j as u8, unit.0, x.0)).or_insert(x.0);
                }
            }
        }
    }

    /// Checks that the comp table is total on composable pairs, then freezes.
    pub fn build(self) -> Result<FiniteThreeCat, Cat3Error> {
        let mut by_dim: [Vec<Cell>; 4] = Default::default();
        for (i, d) in self.dims.iter().enumerate() {
            by_dim[*d as usize].push(Cell(i as u32));
        }
        for dim in 0..3 {
            for c in &by_dim[dim] {
                if self.ids_up[c.0 as usize] == u32::MAX {
                    return Err(Cat3Error::MissingIdentity(self.names[c.0 as usize].clone()));
                }
            }
        }
        for d in 1..=3usize {
            for j in 0..d {
                let mut by_jtgt: HashMap<u32, Vec<Cell>> = HashMap::new();
                for y in &by_dim[d] {
                    by_jtgt.entry(self.tgt_at(*y, j).0).or_default().push(*y);
                }
                for x in &by_dim[d] {
                    let key = self.src_at(*x, j).0;
                    for y in by_jtgt.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                        if !self.comp.contains_key(&(j as u8, x.0, y.0)) {
                            return Err(Cat3Error::MissingComposite {
                                j,
                                x: self.names[x.0 as usize].clone(),
                                y: self.names[y.0 as usize].clone(),
                            });
                        }
                    }
                }
            }
        }
        let mut is_id = vec![false; self.names.len()];
        for up in &self.ids_up {
            if *up != u32::MAX {
                is_id[*up as usize] = true;
            }
        }
        Ok(FiniteThreeCat {
            names: self.names,
            dims: self.dims,
            srcs: self.srcs,
            tgts: self.tgts,
            ids_up: self.ids_up,
            is_id,
            by_dim,
            by_name: self.by_name,
            comp: self.comp,
        })
    }
}

impl FiniteThreeCat {
    pub fn dim(&self, c: Cell) -> usize {
        self.dims[c.0 as usize] as usize
    }

    pub fn name(&self, c: Cell) -> &str {
        &self.names[c.0 as usize]
    }

    pub fn by_name(&self, name: &str) -> Option<Cell> {
        self.by_name.get(name).copied()
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        &self.by_dim[dim]
    }

    pub fn cell_count(&self) -> usize {
        self.names.len()
    }

    pub fn src(&self, c: Cell) -> Cell {
        Cell(self.srcs[c.0 as usize])
    }

    pub fn tgt(&self, c: Cell) -> Cell {
        Cell(self.tgts[c.0 as usize])
    }

    pub fn src_at(&self, mut c: Cell, j: usize) -> Cell {
        while self.dim(c) > j {
            c = self.src(c);
        }
        c
    }

    pub fn tgt_at(&self, mut c: Cell, j: usize) -> Cell {
        while self.dim(c) > j {
            c = self.tgt(c);
        }
        c
    }

    pub fn id(&self, c: Cell) -> Cell {
        let up = self.ids_up[c.0 as usize];
        assert_ne!(up, u32::MAX, "no identity above dimension-3 cell {}", self.name(c));
        Cell(up)
    }

    /// Iterated identity up to the given dimension.
    pub fn id_to(&self, mut c: Cell, dim: usize) -> Cell {
        while self.dim(c) < dim {
            c = self.id(c);
        }
        c
    }

    pub fn is_identity(&self, c: Cell) -> bool {
        self.is_id[c.0 as usize]
    }

    /// The cell whose iterated identity this is (itself if not an identity).
    pub fn identity_base(&self, c: Cell) -> Cell {
        let mut base = c;
        while self.is_id[base.0 as usize] {
            base = self.src(base);
        }
        base
    }

    pub fn comp(&self, j: usize, x: Cell, y: Cell) -> Option<Cell> {
        self.comp.get(&(j as u8, x.0, y.0)).map(|c| Cell(*c))
    }

    /// `x ∘_j y` after promoting the lower-dimensional argument with
    /// iterated identities.
    pub fn comp_promoted(&self, j: usize, x: Cell, y: Cell) -> Result<Cell, String> {
        let d = self.dim(x).max(self.dim(y));
        let (px, py) = (self.id_to(x, d), self.id_to(y, d));
        self.comp(j, px, py).ok_or_else(|| {
            format!(
                "no composite at j={} of {} and {}",
                j,
                self.name(px),
                self.name(py),
            )
        })
    }

    pub fn count_nonidentity(&self, dim: usize) -> usize {
        self.by_dim[dim].iter().filter(|c| !self.is_identity(**c)).count()
    }

    /// `parts[0] ∘_j parts[1] ∘_j …` with promotion; the last part composes
    /// first.
    pub fn chain(&self, j: usize, parts: &[Cell]) -> Result<Cell, String> {
        let mut it = parts.iter();
        let mut acc = *it.next().ok_or("empty composite")?;
        for p in it {
            acc = self.comp_promoted(j, acc, *p)?;
        }
        Ok(acc)
    }

    /// Exhaustive law check; `sample` bounds the number of associativity and
    /// exchange instances examined per (dim, j) when set.
    pub fn validate_with(&self, sample: Option<usize>) -> CatReport {
        let mut report = CatReport::default();
        let mut bad = |kind: &str, witness: String| {
            report.violations.push(Violation { kind: kind.to_string(), witness });
        };

        for d in 1..=3usize {
            for &c in &self.by_dim[d] {
                if self.dim(self.src(c)) != d - 1 || self.dim(self.tgt(c)) != d - 1 {
                    bad("boundary-dimension", self.name(c).to_string());
                }
                if d >= 2 {
                    let (s, t) = (self.src(c), self.tgt(c));
                    if self.src(s) != self.src(t) || self.tgt(s) != self.tgt(t) {
                        bad("globularity", self.name(c).to_string());
                    }
                }
            }
        }
        for d in 0..3usize {
            for &c in &self.by_dim[d] {
                let ic = self.id(c);
                if self.src(ic) != c || self.tgt(ic) != c {
                    bad("identity-section", self.name(c).to_string());
                }
            }
        }

        for d in 1..=3usize {
            for j in 0..d {
                for &x in &self.by_dim[d] {
                    for &y in &self.by_dim[d] {
                        let composable = self.src_at(x, j) == self.tgt_at(y, j);
                        match self.comp(j, x, y) {
                            None if composable => bad(
                                "missing-composite",
                                format!("j={} {} {}", j, self.name(x), self.name(y)),
                            ),
                            Some(_) if !composable => bad(
                                "spurious-composite",
                                format!("j={} {} {}", j, self.name(x), self.name(y)),
                            ),
                            Some(z) => {
                                if self.dim(z) != d {
                                    bad("composite-dimension", self.name(z).to_string());
                                    continue;
                                }
                                let (want_src, want_tgt) = if j == d - 1 {
                                    (self.src(y), self.tgt(x))
                                } else {
                                    let ss = self.comp(j, self.src(x), self.src(y));
                                    let tt = self.comp(j, self.tgt(x), self.tgt(y));
                                    match (ss, tt) {
                                        (Some(a), Some(b)) => (a, b),
                                        _ => {
                                            bad(
                                                "composite-boundary",
                                                format!(
                                                    "j={} {} {}",
                                                    j,
                                                    self.name(x),
                                                    self.name(y)
                                                ),
                                            );
                                            continue;
                                        }
                                    }
                                };
                                if self.src(z) != want_src || self.tgt(z) != want_tgt {
                                    bad(
                                        "composite-boundary",
                                        format!("j={} {} {}", j, self.name(x), self.name(y)),
                                    );
                                }
                            }
                            None => {}
                        }
                    }
                }
            }
        }

        // Unit laws.
        for d in 1..=3usize {
            for j in 0..d {
                for &x in &self.by_dim[d] {
                    let right = self.id_to(self.src_at(x, j), d);
                    if self.comp(j, x, right) != Some(x) {
                        bad("unit", format!("j={} {} (right)", j, self.name(x)));
                    }
                    let left = self.id_to(self.tgt_at(x, j), d);
                    if self.comp(j, left, x) != Some(x) {
                        bad("unit", format!("j={} {} (left)", j, self.name(x)));
                    }
                }
            }
        }

        // Identity functoriality: 1_(x ∘_j y) = 1_x ∘_j 1_y.
        for d in 1..3usize {
            for j in 0..d {
                for &x in &self.by_dim[d] {
                    for &y in &self.by_dim[d] {
                        if let Some(z) = self.comp(j, x, y) {
                            if self.comp(j, self.id(x), self.id(y)) != Some(self.id(z)) {
                                bad(
                                    "identity-functoriality",
                                    format!("j={} {} {}", j, self.name(x), self.name(y)),
                                );
                            }
                        }
                    }
                }
            }
        }

        // Associativity.
        for d in 1..=3usize {
            for j in 0..d {
                let pairs: Vec<(Cell, Cell, Cell)> = self.by_dim[d]
                    .iter()
                    .flat_map(|&x| {
                        self.by_dim[d]
                            .iter()
                            .filter_map(move |&y| self.comp(j, x, y).map(|z| (x, y, z)))
                    })
                    .collect();
                let mut by_left: HashMap<Cell, Vec<(Cell, Cell)>> = HashMap::new();
                for (x, y, _) in &pairs {
                    by_left.entry(*x).or_default().push((*x, *y));
                }
                let mut checked = 0usize;
                'outer: for (x, y, xy) in &pairs {
                    if let Some(more) = by_left.get(y) {
                        for (_, z) in more {
                            let yz = self.comp(j, *y, *z).expect("table is total");
                            let a = self.comp(j, *xy, *z);
                            let b = self.comp(j, *x, yz);
                            if a != b || a.is_none() {
                                bad(
                                    "associativity",
                                    format!(
                                        "j={} {} {} {}",
                                        j,
                                        self.name(*x),
                                        self.name(*y),
                                        self.name(*z)
                                    ),
                                );
                            }
                            checked += 1;
                            if let Some(limit) = sample {
                                if checked >= limit {
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }

        // Exchange, for k < j.
        for d in 2..=3usize {
            for j in 1..d {
                for k in 0..j {
                    let pairs: Vec<(Cell, Cell, Cell)> = self.by_dim[d]
                        .iter()
                        .flat_map(|&x| {
                            self.by_dim[d]
                                .iter()
                                .filter_map(move |&y| self.comp(j, x, y).map(|z| (x, y, z)))
                        })
                        .collect();
                    let mut by_ksrc: HashMap<Cell, Vec<usize>> = HashMap::new();
                    for (i, (x, _, _)) in pairs.iter().enumerate() {
                        by_ksrc.entry(self.src_at(*x, k)).or_default().push(i);
                    }
                    let mut checked = 0usize;
                    'quad: for (x, y, xy) in &pairs {
                        let key = self.tgt_at(*x, k);
                        let Some(cands) = by_ksrc.get(&key) else { continue };
                        for &i in cands {
                            let (x2, y2, x2y2) = &pairs[i];
                            // (x2 ∘_j y2) ∘_k (x ∘_j y) vs (x2 ∘_k x) ∘_j (y2 ∘_k y)
                            let lhs = self.comp(k, *x2y2, *xy);
                            let xx = self.comp(k, *x2, *x);
                            let yy = self.comp(k, *y2, *y);
                            let rhs = match (xx, yy) {
                                (Some(a), Some(b)) => self.comp(j, a, b),
                                _ => None,
                            };
                            if lhs != rhs || lhs.is_none() {
                                bad(
                                    "exchange",
                                    format!(
                                        "j={} k={} {} {} {} {}",
                                        j,
                                        k,
                                        self.name(*x2),
                                        self.name(*y2),
                                        self.name(*x),
                                        self.name(*y)
                                    ),
                                );
                            }
                            checked += 1;
                            if let Some(limit) = sample {
                                if checked >= limit {
                                    break 'quad;
                                }
                            }
                        }
                    }
                }
            }
        }

        report
    }

    pub fn validate(&self) -> CatReport {
        self.validate_with(None)
    }
}

/// All strict 3-functors from `a` to `b` as total cell maps, found by
/// backtracking over cells in dimension order. `keep` prunes partial
/// assignments (it sees the cell and its tentative image).
pub fn strict_functors(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    keep: &dyn Fn(Cell, Cell) -> bool,
) -> Vec<HashMap<Cell, Cell>> {
    let order: Vec<Cell> =
        (0..=3).flat_map(|d| a.cells(d).iter().copied()).collect();
    let mut image: HashMap<Cell, Cell> = HashMap::new();
    let mut out = Vec::new();
    assign(a, b, &order, 0, &mut image, keep, &mut out);
    out
}

fn assign(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    order: &[Cell],
    at: usize,
    image: &mut HashMap<Cell, Cell>,
    keep: &dyn Fn(Cell, Cell) -> bool,
    out: &mut Vec<HashMap<Cell, Cell>>,
) {
    if at == order.len() {
        if functor_laws_hold(a, b, image) {
            out.push(image.clone());
        }
        return;
    }
    let x = order[at];
    let d = a.dim(x);
    // Forced choices keep the search small: identities and already-known
    // composites map to the corresponding cell of b.
    if d > 0 && a.is_identity(x) {
        let base = image[&a.src(x)];
        let y = b.id(base);
        if keep(x, y) {
            image.insert(x, y);
            assign(a, b, order, at + 1, image, keep, out);
            image.remove(&x);
        }
        return;
    }
    for &y in b.cells(d) {
        if d > 0 && (image[&a.src(x)] != b.src(y) || image[&a.tgt(x)] != b.tgt(y)) {
            continue;
        }
        if !keep(x, y) {
            continue;
        }
        image.insert(x, y);
        assign(a, b, order, at + 1, image, keep, out);
        image.remove(&x);
    }
}

fn functor_laws_hold(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    image: &HashMap<Cell, Cell>,
) -> bool {
    for d in 1..=3usize {
        for j in 0..d {
            for &x in a.cells(d) {
                for &y in a.cells(d) {
                    if let Some(z) = a.comp(j, x, y) {
                        if b.comp(j, image[&x], image[&y]) != Some(image[&z]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// The globe complex whose ν is the i-disk.
fn globe_complex(i: usize) -> Adc {
    use crate::chains::Chain;
    let mut basis: Vec<Vec<String>> = Vec::new();
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::new();
    if i == 0 {
        basis.push(vec!["c0".into()]);
        aug.insert("c0".into(), 1);
    } else {
        basis.push(vec!["s0".into(), "t0".into()]);
        aug.insert("s0".into(), 1);
        aug.insert("t0".into(), 1);
        for k in 1..i {
            basis.push(vec![format!("s{k}"), format!("t{k}")]);
            for side in ["s", "t"] {
                diff.insert(
                    format!("{side}{k}"),
                    Chain::from_pairs(k - 1, [(format!("t{}", k - 1), 1), (format!("s{}", k - 1), -1)]),
                );
            }
        }
        basis.push(vec![format!("c{i}")]);
        diff.insert(
            format!("c{i}"),
            Chain::from_pairs(i - 1, [(format!("t{}", i - 1), 1), (format!("s{}", i - 1), -1)]),
        );
    }
    Adc::new(basis, diff, aug).expect("globe complex is well-formed")
}

/// The i-disk: one principal i-cell, two non-trivial k-cells below it.
pub fn make_disk(i: usize) -> FiniteThreeCat {
    assert!(i <= 3);
    truncate_from_adc(&globe_complex(i), 1).expect("disk truncation is a category")
}

/// D₃^♯: the 2-skeleton of the 3-disk with an invertible principal 3-cell.
pub fn make_invertible_disk3() -> FiniteThreeCat {
    let mut b = CatBuilder::new();
    let a = b.object("a").unwrap();
    let z = b.object("b").unwrap();
    let f = b.cell("f", 1, a, z).unwrap();
    let g = b.cell("g", 1, a, z).unwrap();
    let l = b.cell("disk_l", 2, f, g).unwrap();
    let r = b.cell("disk_r", 2, f, g).unwrap();
    let tau_d = b.cell("tau_d", 3, l, r).unwrap();
    let tau_u = b.cell("tau_u", 3, r, l).unwrap();
    b.complete_identities().unwrap();
    let one_l = b.id_to(l, 3).unwrap();
    let one_r = b.id_to(r, 3).unwrap();
    b.set_comp(2, tau_u, tau_d, one_l);
    b.set_comp(2, tau_d, tau_u, one_r);
    b.complete_unit_composites();
    b.build().expect("invertible 3-disk is a category")
}

/// One object, trivial 1- and 2-skeleton, and a single involutive
/// endo-3-cell: the smallest 3-category with a two-element 3-hom. All three
/// compositions of 3-cells coincide with the Z/2 product.
pub fn make_involution_sphere() -> FiniteThreeCat {
    let mut b = CatBuilder::new();
    let o = b.object("pt").unwrap();
    let e = b.cell("1[pt]", 1, o, o).unwrap();
    b.set_identity(o, e);
    let u = b.cell("1[1[pt]]", 2, e, e).unwrap();
    b.set_identity(e, u);
    let one = b.cell("1[1[1[pt]]]", 3, u, u).unwrap();
    b.set_identity(u, one);
    let sigma = b.cell("sigma", 3, u, u).unwrap();
    for j in 0..3 {
        b.set_comp(j, sigma, sigma, one);
    }
    b.set_comp(0, e, e, e);
    b.set_comp(0, u, u, u);
    b.set_comp(1, u, u, u);
    b.complete_unit_composites();
    b.build().expect("involution sphere is a category")
}

/// The 1-skeleton constraint of the disk-to-invertible-disk comparison:
/// the boundary of the 2-disk is matched onto the shared boundary of the
/// invertible 3-disk, source side to f and target side to g.
pub fn disk2_skeleton_constraint(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    x: Cell,
    y: Cell,
) -> bool {
    match a.dim(x) {
        0 => b.name(y) == if a.name(x).contains("s0") { "a" } else { "b" },
        1 if !a.is_identity(x) => {
            b.name(y) == if a.name(x).contains("s1") { "f" } else { "g" }
        }
        _ => true,
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A truncated ν(K) together with the map from ν-cells (dimension ≤ 3) to
/// table cells; 3-cells land in their 4-cell-connectivity class.
pub struct Truncation {
    pub cat: FiniteThreeCat,
    pub cell_of: HashMap<NuCell, Cell>,
}

/// The 3-truncation of ν(K): cells of dimension ≤ 2 are the ν-cells, 3-cells
/// are ν-3-cells modulo the equivalence generated by 4-cells, compositions
/// induced on classes and certified well-defined.
pub fn truncate_from_adc(k: &Adc, coeff_cap: i64) -> Result<FiniteThreeCat, Cat3Error> {
    Ok(truncation_from_adc(k, coeff_cap)?.cat)
}

pub fn truncation_from_adc(k: &Adc, coeff_cap: i64) -> Result<Truncation, Cat3Error> {
    let levels = nu::enumerate_by_dim(k, 4, coeff_cap);
    let three = &levels[3];
    let index3: HashMap<&NuCell, usize> = three.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut uf = UnionFind::new(three.len());
    for four in &levels[4] {
        if four.is_identity_cell() {
            continue;
        }
        let s = four.source().expect("dim 4");
        let t = four.target().expect("dim 4");
        uf.union(index3[&s], index3[&t]);
    }
    let class_rep: Vec<usize> = (0..three.len()).map(|i| uf.find(i)).collect();

    let mut b = CatBuilder::new();
    let mut cell_of: HashMap<NuCell, Cell> = HashMap::new();
    for dim in 0..=2usize {
        for c in &levels[dim] {
            let id = if dim == 0 {
                b.object(c.name())?
            } else {
                let s = cell_of[&c.source().expect("dim>0")];
                let t = cell_of[&c.target().expect("dim>0")];
                b.cell(c.name(), dim, s, t)?
            };
            cell_of.insert(c.clone(), id);
        }
    }
    // 3-cell classes, one table cell per representative.
    let mut class_cell: HashMap<usize, Cell> = HashMap::new();
    for (i, c) in three.iter().enumerate() {
        let rep = class_rep[i];
        if let std::collections::hash_map::Entry::Vacant(e) = class_cell.entry(rep) {
            let s = cell_of[&c.source().expect("dim 3")];
            let t = cell_of[&c.target().expect("dim 3")];
            let quotiented = class_rep.iter().filter(|r| **r == rep).count() > 1;
            let name = if quotiented {
                format!("{}-class", three[rep].name())
            } else {
                three[rep].name()
            };
            e.insert(b.cell(name, 3, s, t)?);
        } else {
            // Globularity of 4-cells makes boundaries constant on classes.
            let rep_cell = &three[rep];
            debug_assert_eq!(
                cell_of[&rep_cell.source().unwrap()],
                cell_of[&c.source().unwrap()],
            );
        }
        cell_of.insert(c.clone(), class_cell[&rep]);
    }
    // Identities.
    for dim in 0..=2usize {
        for c in &levels[dim] {
            let base = cell_of[c];
            let up = cell_of[&c.identity()];
            b.set_identity(base, up);
        }
    }
    // Compositions, certified on 3-cell classes.
    let mut chosen: HashMap<(u8, Cell, Cell), (Cell, String)> = HashMap::new();
    for d in 1..=3usize {
        for j in 0..d {
            for x in &levels[d] {
                for y in &levels[d] {
                    if let Ok(z) = x.compose(y, j) {
                        let (cx, cy) = (cell_of[x], cell_of[y]);
                        let cz = *cell_of.get(&z).ok_or_else(|| {
                            Cat3Error::UnknownCell(format!("composite escapes enumeration: {}", z.name()))
                        })?;
                        match chosen.get(&(j as u8, cx, cy)) {
                            None => {
                                chosen.insert(
                                    (j as u8, cx, cy),
                                    (cz, format!("{} ∘{} {}", x.name(), j, y.name())),
                                );
                                b.set_comp(j, cx, cy, cz);
                            }
                            Some((prev, wit)) => {
                                if *prev != cz {
                                    return Err(Cat3Error::QuotientIllDefined(format!(
                                        "j={j}: {wit} vs {} ∘{} {}",
                                        x.name(),
                                        j,
                                        y.name()
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Truncation { cat: b.build()?, cell_of })
}

/// A finite 1-category given by explicit tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCat {
    pub objects: Vec<String>,
    /// (name, src index, tgt index), identities excluded.
    pub arrows: Vec<(String, usize, usize)>,
    /// composite of arrow `g` after arrow `f`, keyed by (g, f) indices into
    /// `arrows`; `None` encodes an identity composite.
    pub comp: BTreeMap<(usize, usize), Option<usize>>,
}

impl OneCat {
    /// Embeds as a 3-category with only identity higher cells.
    pub fn embed(&self) -> Result<FiniteThreeCat, Cat3Error> {
        let mut b = CatBuilder::new();
        let objs: Vec<Cell> =
            self.objects.iter().map(|o| b.object(o.clone()).unwrap()).collect();
        let mut id1: Vec<Cell> = Vec::new();
        for (i, o) in objs.iter().enumerate() {
            id1.push(b.cell(format!("1[{}]", self.objects[i]), 1, *o, *o)?);
            b.set_identity(*o, id1[i]);
        }
        let arrs: Vec<Cell> = self
            .arrows
            .iter()
            .map(|(n, s, t)| b.cell(n.clone(), 1, objs[*s], objs[*t]))
            .collect::<Result<_, _>>()?;
        // 1-composition table.
        for (gi, g) in self.arrows.iter().enumerate() {
            for (fi, f) in self.arrows.iter().enumerate() {
                if f.2 == g.1 {
                    let out = match self.comp.get(&(gi, fi)) {
                        Some(Some(h)) => arrs[*h],
                        Some(None) => id1[f.1],
                        None => {
                            return Err(Cat3Error::MissingComposite {
                                j: 0,
                                x: g.0.clone(),
                                y: f.0.clone(),
                            })
                        }
                    };
                    b.set_comp(0, arrs[gi], arrs[fi], out);
                }
            }
        }
        b.complete_identities()?;
        // Higher compositions are identity-functorial images of the 1-table;
        // unit completion covers everything except id ∘_0 id on arrows.
        b.complete_unit_composites();
        let pairs: Vec<(u32, u32, u32)> = b
            .comp
            .iter()
            .filter(|((j, _, _), _)| *j == 0)
            .map(|((_, x, y), z)| (*x, *y, *z))
            .collect();
        for (x, y, z) in pairs {
            let (x, y, z) = (Cell(x), Cell(y), Cell(z));
            if b.dim_of(x) == 1 {
                let (ix, iy, iz) =
                    (b.id_to(x, 2).unwrap(), b.id_to(y, 2).unwrap(), b.id_to(z, 2).unwrap());
                b.set_comp(0, ix, iy, iz);
                let (jx, jy, jz) =
                    (b.id_to(x, 3).unwrap(), b.id_to(y, 3).unwrap(), b.id_to(z, 3).unwrap());
                b.set_comp(0, jx, jy, jz);
            }
        }
        b.complete_unit_composites();
        b.build()
    }

    /// The poset `[n]` as a 1-category; arrows are named `i-j`.
    pub fn total_order(n: usize) -> OneCat {
        OneCat::of_poset(&crate::adc::Poset::total(n))
    }

    /// A finite poset as a 1-category, arrows the strict relations.
    pub fn of_poset(p: &crate::adc::Poset) -> OneCat {
        let objects: Vec<String> = (0..p.size).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..p.size {
            for j in 0..p.size {
                if p.lt(i, j) {
                    index.insert((i, j), arrows.len());
                    arrows.push((format!("{i}-{j}"), i, j));
                }
            }
        }
        let mut comp = BTreeMap::new();
        for (&(i, j), &fi) in &index {
            for (&(k, l), &gi) in &index {
                if j == k {
                    comp.insert((gi, fi), Some(index[&(i, l)]));
                }
            }
        }
        OneCat { objects, arrows, comp }
    }
}

/// JSON form of a finite 1-category; `out = null` encodes an identity
/// composite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OneCatJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    pub comp: Vec<OneCompEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OneCompEntry {
    pub g: String,
    pub f: String,
    pub out: Option<String>,
}

impl OneCat {
    pub fn to_json(&self) -> OneCatJson {
        let arrows = self
            .arrows
            .iter()
            .map(|(n, s, t)| ArrowEntry {
                name: n.clone(),
                src: self.objects[*s].clone(),
                tgt: self.objects[*t].clone(),
            })
            .collect();
        let mut comp: Vec<OneCompEntry> = self
            .comp
            .iter()
            .map(|((g, f), out)| OneCompEntry {
                g: self.arrows[*g].0.clone(),
                f: self.arrows[*f].0.clone(),
                out: out.map(|h| self.arrows[h].0.clone()),
            })
            .collect();
        comp.sort_by(|a, b| (&a.g, &a.f).cmp(&(&b.g, &b.f)));
        OneCatJson { objects: self.objects.clone(), arrows, comp }
    }

    pub fn from_json(j: &OneCatJson) -> Result<OneCat, String> {
        let obj_index: HashMap<&String, usize> =
            j.objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        for a in &j.arrows {
            let s = *obj_index.get(&a.src).ok_or_else(|| format!("unknown object {}", a.src))?;
            let t = *obj_index.get(&a.tgt).ok_or_else(|| format!("unknown object {}", a.tgt))?;
            arrow_index.insert(a.name.clone(), arrows.len());
            arrows.push((a.name.clone(), s, t));
        }
        let mut comp = BTreeMap::new();
        for e in &j.comp {
            let g = *arrow_index.get(&e.g).ok_or_else(|| format!("unknown arrow {}", e.g))?;
            let f = *arrow_index.get(&e.f).ok_or_else(|| format!("unknown arrow {}", e.f))?;
            let out = match &e.out {
                Some(h) => {
                    Some(*arrow_index.get(h).ok_or_else(|| format!("unknown arrow {h}"))?)
                }
                None => None,
            };
            comp.insert((g, f), out);
        }
        Ok(OneCat { objects: j.objects.clone(), arrows, comp })
    }
}

/// JSON form of a finite 3-category, per the interchange schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatJson {
    pub cells: Vec<Vec<String>>,
    pub src: BTreeMap<String, String>,
    pub tgt: BTreeMap<String, String>,
    pub id: BTreeMap<String, String>,
    pub comp: Vec<CompEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompEntry {
    pub j: usize,
    pub x: String,
    pub y: String,
    pub out: String,
}

impl FiniteThreeCat {
    pub fn to_json(&self) -> CatJson {
        let cells = (0..=3)
            .map(|d| self.by_dim[d].iter().map(|c| self.name(*c).to_string()).collect())
            .collect();
        let mut src = BTreeMap::new();
        let mut tgt = BTreeMap::new();
        let mut id = BTreeMap::new();
        for i in 0..self.names.len() {
            let c = Cell(i as u32);
            if self.dim(c) > 0 {
                src.insert(self.name(c).to_string(), self.name(self.src(c)).to_string());
                tgt.insert(self.name(c).to_string(), self.name(self.tgt(c)).to_string());
            }
            if self.ids_up[i] != u32::MAX {
                id.insert(self.name(c).to_string(), self.name(Cell(self.ids_up[i])).to_string());
            }
        }
        let mut comp: Vec<CompEntry> = self
            .comp
            .iter()
            .map(|((j, x, y), z)| CompEntry {
                j: *j as usize,
                x: self.name(Cell(*x)).to_string(),
                y: self.name(Cell(*y)).to_string(),
                out: self.name(Cell(*z)).to_string(),
            })
            .collect();
        comp.sort_by(|a, b| (a.j, &a.x, &a.y).cmp(&(b.j, &b.x, &b.y)));
        CatJson { cells, src, tgt, id, comp }
    }

    pub fn from_json(j: &CatJson) -> Result<FiniteThreeCat, Cat3Error> {
        let mut b = CatBuilder::new();
        for (dim, names) in j.cells.iter().enumerate() {
            for n in names {
                if dim == 0 {
                    b.object(n.clone())?;
                } else {
                    let s = j.src.get(n).ok_or_else(|| Cat3Error::UnknownCell(n.clone()))?;
                    let t = j.tgt.get(n).ok_or_else(|| Cat3Error::UnknownCell(n.clone()))?;
                    let s = b.by_name.get(s).copied().ok_or_else(|| Cat3Error::UnknownCell(s.clone()))?;
                    let t = b.by_name.get(t).copied().ok_or_else(|| Cat3Error::UnknownCell(t.clone()))?;
                    b.cell(n.clone(), dim, s, t)?;
                }
            }
        }
        for (base, up) in &j.id {
            let base = b.by_name.get(base).copied().ok_or_else(|| Cat3Error::UnknownCell(base.clone()))?;
            let up = b.by_name.get(up).copied().ok_or_else(|| Cat3Error::UnknownCell(up.clone()))?;
            b.set_identity(base, up);
        }
        for e in &j.comp {
            let x = b.by_name.get(&e.x).copied().ok_or_else(|| Cat3Error::UnknownCell(e.x.clone()))?;
            let y = b.by_name.get(&e.y).copied().ok_or_else(|| Cat3Error::UnknownCell(e.y.clone()))?;
            let z = b.by_name.get(&e.out).copied().ok_or_else(|| Cat3Error::UnknownCell(e.out.clone()))?;
            b.set_comp(e.j, x, y, z);
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disks_are_valid() {
        for i in 0..=3 {
            let d = make_disk(i);
            assert!(d.validate().is_valid(), "disk({i})");
        }
    }

    #[test]
    fn disk_cell_counts() {
        let d0 = make_disk(0);
        assert_eq!(d0.count_nonidentity(0), 1);
        let d2 = make_disk(2);
        assert_eq!(d2.count_nonidentity(0), 2);
        assert_eq!(d2.count_nonidentity(1), 2);
        assert_eq!(d2.count_nonidentity(2), 1);
        assert_eq!(d2.count_nonidentity(3), 0);
        let d3 = make_disk(3);
        assert_eq!(d3.count_nonidentity(2), 2);
        assert_eq!(d3.count_nonidentity(3), 1);
        // The principal cell's boundary 2-cells are parallel.
        let p = d3.cells(3).iter().find(|c| !d3.is_identity(**c)).copied().unwrap();
        let (s, t) = (d3.src(p), d3.tgt(p));
        assert_ne!(s, t);
        assert_eq!(d3.src(s), d3.src(t));
        assert_eq!(d3.tgt(s), d3.tgt(t));
    }

    #[test]
    fn invertible_disk3() {
        let d = make_invertible_disk3();
        assert!(d.validate().is_valid());
        assert_eq!(d.count_nonidentity(3), 2);
        let tau_d = d.by_name("tau_d").unwrap();
        let tau_u = d.by_name("tau_u").unwrap();
        let l = d.by_name("disk_l").unwrap();
        let r = d.by_name("disk_r").unwrap();
        assert_eq!(d.comp(2, tau_u, tau_d), Some(d.id(l)));
        assert_eq!(d.comp(2, tau_d, tau_u), Some(d.id(r)));
        // Same 2-skeleton as the honest 3-disk.
        let d3 = make_disk(3);
        for dim in 0..=2 {
            assert_eq!(d.count_nonidentity(dim), d3.count_nonidentity(dim));
        }
    }

    #[test]
    fn corrupting_a_composite_is_reported() {
        let d2 = make_disk(2);
        let mut j = d2.to_json();
        // Redirect one ∘₀ composite of 1-cells to a wrong parallel cell.
        let e = j
            .comp
            .iter_mut()
            .find(|e| {
                e.j == 0
                    && d2.dim(d2.by_name(&e.x).unwrap()) == 1
                    && !d2.is_identity(d2.by_name(&e.x).unwrap())
                    && d2.is_identity(d2.by_name(&e.y).unwrap())
            })
            .unwrap();
        let old = e.out.clone();
        let replacement = d2
            .cells(1)
            .iter()
            .map(|c| d2.name(*c).to_string())
            .find(|n| {
                let c = d2.by_name(n).unwrap();
                let o = d2.by_name(&old).unwrap();
                *n != old && d2.src(c) == d2.src(o) && d2.tgt(c) == d2.tgt(o)
            })
            .unwrap();
        e.out = replacement;
        let broken = FiniteThreeCat::from_json(&j).unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        // Exactly one table entry was corrupted; it shows up as a unit-law
        // violation at that entry.
        let units: Vec<_> =
            report.violations.iter().filter(|v| v.kind == "unit").collect();
        assert_eq!(units.len(), 1);
    }

    #[test]
    fn truncation_of_triangle_and_point() {
        let t0 = truncate_from_adc(&Adc::simplex_complex(0), 1).unwrap();
        assert_eq!(t0.count_nonidentity(0), 1);
        assert_eq!(t0.cells(0).len(), 1);

        let t2 = truncate_from_adc(&Adc::simplex_complex(2), 1).unwrap();
        assert!(t2.validate().is_valid());
        assert_eq!(t2.count_nonidentity(0), 3);
        assert_eq!(t2.count_nonidentity(1), 4);
        assert_eq!(t2.count_nonidentity(2), 1);
        assert_eq!(t2.count_nonidentity(3), 0);
    }

    #[test]
    fn truncation_of_tetrahedron_is_valid() {
        let t3 = truncate_from_adc(&Adc::simplex_complex(3), 1).unwrap();
        assert!(t3.validate().is_valid());
        // No 4-cells with non-zero top, so no quotienting.
        assert!(t3.cells(3).iter().all(|c| !t3.name(*c).ends_with("-class")));
        // The generating 3-cell has the oriental boundary.
        let k = Adc::simplex_complex(3);
        let gen = nu::atom_cell(&k, "0-1-2-3");
        let c = t3.by_name(&gen.name()).unwrap();
        assert_eq!(t3.name(t3.src(c)), gen.source().unwrap().name());
    }

    #[test]
    fn truncation_of_pentagon_identifies_composites() {
        let k = Adc::simplex_complex(4);
        let tr = truncation_from_adc(&k, 1).unwrap();
        assert!(tr.cat.validate().is_valid());
        // ⟨01234⟩ ties its source and target 3-cells into one class.
        let top = nu::atom_cell(&k, "0-1-2-3-4");
        let s = top.source().unwrap();
        let t = top.target().unwrap();
        assert_ne!(s, t);
        assert_eq!(tr.cell_of[&s], tr.cell_of[&t]);
        assert!(tr.cat.name(tr.cell_of[&s]).ends_with("-class"));
    }

    #[test]
    fn one_cat_embedding() {
        let c = OneCat::total_order(2).embed().unwrap();
        assert!(c.validate().is_valid());
        assert_eq!(c.count_nonidentity(0), 3);
        assert_eq!(c.count_nonidentity(1), 3);
        assert_eq!(c.count_nonidentity(2), 0);
        let f = c.by_name("0-1").unwrap();
        let g = c.by_name("1-2").unwrap();
        assert_eq!(c.comp(0, g, f), c.by_name("0-2"));
    }

    #[test]
    fn json_round_trip() {
        let d = make_invertible_disk3();
        let j = d.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: CatJson = serde_json::from_str(&text).unwrap();
        let d2 = FiniteThreeCat::from_json(&back).unwrap();
        assert!(d2.validate().is_valid());
        assert_eq!(d2.cell_count(), d.cell_count());
        assert_eq!(serde_json::to_string(&d2.to_json()).unwrap(), text);
    }
}
