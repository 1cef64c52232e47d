//! Normalised oplax 3-functors between finite 3-categories.
//!
//! The data is eight total maps indexed by tree shapes; the validator checks
//! the boundary contracts, the seven normalisation families and the fourteen
//! coherence families. Coherences are quantified over tuples of non-identity
//! cells: instances containing an identity reduce to the normalisation
//! families by the unit laws.

use std::collections::BTreeMap;

use crate::cat3::{Cell, FiniteThreeCat};
use crate::nerve::{self, Simplex, SimplicialMap};
use crate::trees::Shape;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OplaxData {
    pub source: FiniteThreeCat,
    pub target: FiniteThreeCat,
    pub f_dot: BTreeMap<Cell, Cell>,
    pub f_l: BTreeMap<Cell, Cell>,
    pub f_ll: BTreeMap<Cell, Cell>,
    pub f_lll: BTreeMap<Cell, Cell>,
    /// keyed by (g, f) with f first in composition order
    pub f_v: BTreeMap<(Cell, Cell), Cell>,
    /// keyed by (h, g, f)
    pub f_w: BTreeMap<(Cell, Cell, Cell), Cell>,
    /// keyed by (g, α): the 2-cell α then the 1-cell g
    pub f_vr: BTreeMap<(Cell, Cell), Cell>,
    /// keyed by (β, f): the 1-cell f then the 2-cell β
    pub f_vl: BTreeMap<(Cell, Cell), Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OplaxViolation {
    pub family: String,
    pub witness: String,
}

#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
pub struct OplaxReport {
    pub violations: Vec<OplaxViolation>,
}

impl OplaxReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cells of the given dimension bucketed by an iterated boundary.
fn bucket(a: &FiniteThreeCat, dim: usize, key: impl Fn(Cell) -> Cell) -> std::collections::HashMap<Cell, Vec<Cell>> {
    let mut m: std::collections::HashMap<Cell, Vec<Cell>> = std::collections::HashMap::new();
    for &c in a.cells(dim) {
        m.entry(key(c)).or_default().push(c);
    }
    m
}

/// Domains of the eight maps over a source category.
fn composable_pairs(a: &FiniteThreeCat) -> Vec<(Cell, Cell)> {
    let by_tgt = bucket(a, 1, |c| a.tgt(c));
    let mut out = Vec::new();
    for &g in a.cells(1) {
        for &f in by_tgt.get(&a.src(g)).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((g, f));
        }
    }
    out
}

fn composable_triples(a: &FiniteThreeCat) -> Vec<(Cell, Cell, Cell)> {
    let by_tgt = bucket(a, 1, |c| a.tgt(c));
    let mut out = Vec::new();
    for &h in a.cells(1) {
        for &g in by_tgt.get(&a.src(h)).map(Vec::as_slice).unwrap_or(&[]) {
            for &f in by_tgt.get(&a.src(g)).map(Vec::as_slice).unwrap_or(&[]) {
                out.push((h, g, f));
            }
        }
    }
    out
}

fn whisker_right_pairs(a: &FiniteThreeCat) -> Vec<(Cell, Cell)> {
    // (g, α): 2-cell α then 1-cell g
    let by_tgt0 = bucket(a, 2, |c| a.tgt_at(c, 0));
    let mut out = Vec::new();
    for &g in a.cells(1) {
        for &al in by_tgt0.get(&a.src(g)).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((g, al));
        }
    }
    out
}

fn whisker_left_pairs(a: &FiniteThreeCat) -> Vec<(Cell, Cell)> {
    // (β, f): 1-cell f then 2-cell β
    let by_tgt = bucket(a, 1, |c| a.tgt(c));
    let mut out = Vec::new();
    for &be in a.cells(2) {
        for &f in by_tgt.get(&a.src_at(be, 0)).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((be, f));
        }
    }
    out
}

impl OplaxData {
    /// A strict 3-functor (given as a total cell map) embedded with identity
    /// structure cells.
    pub fn strict(
        a: &FiniteThreeCat,
        b: &FiniteThreeCat,
        u: &std::collections::HashMap<Cell, Cell>,
    ) -> OplaxData {
        let f_dot = a.cells(0).iter().map(|c| (*c, u[c])).collect();
        let f_l: BTreeMap<Cell, Cell> = a.cells(1).iter().map(|c| (*c, u[c])).collect();
        let f_ll: BTreeMap<Cell, Cell> = a.cells(2).iter().map(|c| (*c, u[c])).collect();
        let f_lll = a.cells(3).iter().map(|c| (*c, u[c])).collect();
        let f_v = composable_pairs(a)
            .into_iter()
            .map(|(g, f)| ((g, f), b.id(u[&a.comp(0, g, f).unwrap()])))
            .collect();
        let f_w = composable_triples(a)
            .into_iter()
            .map(|(h, g, f)| {
                let gf = a.comp(0, g, f).unwrap();
                let hgf = a.comp(0, h, gf).unwrap();
                ((h, g, f), b.id(b.id(u[&hgf])))
            })
            .collect();
        let f_vr = whisker_right_pairs(a)
            .into_iter()
            .map(|(g, al)| {
                let w = a.comp_promoted(0, g, al).expect("whisker in source");
                ((g, al), b.id(u[&w]))
            })
            .collect();
        let f_vl = whisker_left_pairs(a)
            .into_iter()
            .map(|(be, f)| {
                let w = a.comp_promoted(0, be, f).expect("whisker in source");
                ((be, f), b.id(u[&w]))
            })
            .collect();
        OplaxData {
            source: a.clone(),
            target: b.clone(),
            f_dot,
            f_l,
            f_ll,
            f_lll,
            f_v,
            f_w,
            f_vr,
            f_vl,
        }
    }

    pub fn identity(a: &FiniteThreeCat) -> OplaxData {
        let id: std::collections::HashMap<Cell, Cell> =
            (0..=3).flat_map(|d| a.cells(d).iter().map(|c| (*c, *c))).collect();
        OplaxData::strict(a, a, &id)
    }

    fn tgt_cat(&self) -> &FiniteThreeCat {
        &self.target
    }

    /// Validates boundary contracts, normalisation and the fourteen
    /// coherence families; every violation is keyed by its family and the
    /// witnessing tuple.
    pub fn validate(&self) -> OplaxReport {
        let mut report = OplaxReport::default();
        self.check_totality(&mut report);
        if !report.is_valid() {
            return report;
        }
        self.check_boundaries(&mut report);
        if !report.is_valid() {
            return report;
        }
        self.check_normalisation(&mut report);
        self.check_coherences(&mut report);
        report
    }

    fn check_totality(&self, report: &mut OplaxReport) {
        let a = &self.source;
        let mut miss = |family: &str, witness: String| {
            report
                .violations
                .push(OplaxViolation { family: format!("totality:{family}"), witness });
        };
        for &c in a.cells(0) {
            if !self.f_dot.contains_key(&c) {
                miss("DOT", a.name(c).into());
            }
        }
        for &c in a.cells(1) {
            if !self.f_l.contains_key(&c) {
                miss("L", a.name(c).into());
            }
        }
        for &c in a.cells(2) {
            if !self.f_ll.contains_key(&c) {
                miss("LL", a.name(c).into());
            }
        }
        for &c in a.cells(3) {
            if !self.f_lll.contains_key(&c) {
                miss("LLL", a.name(c).into());
            }
        }
        for (g, f) in composable_pairs(a) {
            if !self.f_v.contains_key(&(g, f)) {
                miss("V", format!("{} {}", a.name(g), a.name(f)));
            }
        }
        for (h, g, f) in composable_triples(a) {
            if !self.f_w.contains_key(&(h, g, f)) {
                miss("W", format!("{} {} {}", a.name(h), a.name(g), a.name(f)));
            }
        }
        for (g, al) in whisker_right_pairs(a) {
            if !self.f_vr.contains_key(&(g, al)) {
                miss("VR", format!("{} {}", a.name(g), a.name(al)));
            }
        }
        for (be, f) in whisker_left_pairs(a) {
            if !self.f_vl.contains_key(&(be, f)) {
                miss("VL", format!("{} {}", a.name(be), a.name(f)));
            }
        }
    }

    /// Source and target of the structural cell attached to a V pair.
    fn v_bounds(&self, g: Cell, f: Cell) -> Result<(Cell, Cell), String> {
        let a = &self.source;
        let b = self.tgt_cat();
        let gf = a.comp(0, g, f).ok_or("pair not composable")?;
        let lhs = self.f_l[&gf];
        let rhs = b.chain(0, &[self.f_l[&g], self.f_l[&f]])?;
        Ok((lhs, rhs))
    }

    fn w_bounds(&self, h: Cell, g: Cell, f: Cell) -> Result<(Cell, Cell), String> {
        let a = &self.source;
        let b = self.tgt_cat();
        let gf = a.comp(0, g, f).ok_or("gf")?;
        let hg = a.comp(0, h, g).ok_or("hg")?;
        let s = b.chain(1, &[b.chain(0, &[self.f_l[&h], self.f_v[&(g, f)]])?, self.f_v[&(h, gf)]])?;
        let t = b.chain(1, &[b.chain(0, &[self.f_v[&(h, g)], self.f_l[&f]])?, self.f_v[&(hg, f)]])?;
        Ok((s, t))
    }

    fn vr_bounds(&self, g: Cell, al: Cell) -> Result<(Cell, Cell), String> {
        let a = &self.source;
        let b = self.tgt_cat();
        let f = a.src(al);
        let fp = a.tgt(al);
        let gal = a.comp_promoted(0, g, al)?;
        let s = b.chain(1, &[b.chain(0, &[self.f_l[&g], self.f_ll[&al]])?, self.f_v[&(g, f)]])?;
        let t = b.chain(1, &[self.f_v[&(g, fp)], self.f_ll[&gal]])?;
        Ok((s, t))
    }

    fn vl_bounds(&self, be: Cell, f: Cell) -> Result<(Cell, Cell), String> {
        let a = &self.source;
        let b = self.tgt_cat();
        let g = a.src(be);
        let gp = a.tgt(be);
        let bef = a.comp_promoted(0, be, f)?;
        let s = b.chain(1, &[self.f_v[&(gp, f)], self.f_ll[&bef]])?;
        let t = b.chain(1, &[b.chain(0, &[self.f_ll[&be], self.f_l[&f]])?, self.f_v[&(g, f)]])?;
        Ok((s, t))
    }

    fn check_boundaries(&self, report: &mut OplaxReport) {
        let a = &self.source;
        let b = self.tgt_cat();
        let mut bad = |family: &str, witness: String| {
            report
                .violations
                .push(OplaxViolation { family: format!("boundary:{family}"), witness });
        };
        for (c, fc) in &self.f_dot {
            if b.dim(*fc) != 0 {
                bad("DOT", a.name(*c).into());
            }
        }
        for (c, fc) in &self.f_l {
            if b.dim(*fc) != 1
                || b.src(*fc) != self.f_dot[&a.src(*c)]
                || b.tgt(*fc) != self.f_dot[&a.tgt(*c)]
            {
                bad("L", a.name(*c).into());
            }
        }
        for (c, fc) in &self.f_ll {
            if b.dim(*fc) != 2
                || b.src(*fc) != self.f_l[&a.src(*c)]
                || b.tgt(*fc) != self.f_l[&a.tgt(*c)]
            {
                bad("LL", a.name(*c).into());
            }
        }
        for (c, fc) in &self.f_lll {
            if b.dim(*fc) != 3
                || b.src(*fc) != self.f_ll[&a.src(*c)]
                || b.tgt(*fc) != self.f_ll[&a.tgt(*c)]
            {
                bad("LLL", a.name(*c).into());
            }
        }
        for ((g, f), v) in &self.f_v {
            match self.v_bounds(*g, *f) {
                Ok((s, t)) if b.dim(*v) == 2 && b.src(*v) == s && b.tgt(*v) == t => {}
                _ => bad("V", format!("{} {}", a.name(*g), a.name(*f))),
            }
        }
        for ((h, g, f), w) in &self.f_w {
            match self.w_bounds(*h, *g, *f) {
                Ok((s, t)) if b.dim(*w) == 3 && b.src(*w) == s && b.tgt(*w) == t => {}
                _ => bad("W", format!("{} {} {}", a.name(*h), a.name(*g), a.name(*f))),
            }
        }
        for ((g, al), w) in &self.f_vr {
            match self.vr_bounds(*g, *al) {
                Ok((s, t)) if b.dim(*w) == 3 && b.src(*w) == s && b.tgt(*w) == t => {}
                _ => bad("VR", format!("{} {}", a.name(*g), a.name(*al))),
            }
        }
        for ((be, f), w) in &self.f_vl {
            match self.vl_bounds(*be, *f) {
                Ok((s, t)) if b.dim(*w) == 3 && b.src(*w) == s && b.tgt(*w) == t => {}
                _ => bad("VL", format!("{} {}", a.name(*be), a.name(*f))),
            }
        }
    }

    fn check_normalisation(&self, report: &mut OplaxReport) {
        let a = &self.source;
        let b = self.tgt_cat();
        let mut bad = |family: &str, witness: String| {
            report
                .violations
                .push(OplaxViolation { family: format!("normalisation:{family}"), witness });
        };
        for &o in a.cells(0) {
            if self.f_l[&a.id(o)] != b.id(self.f_dot[&o]) {
                bad("L", a.name(o).into());
            }
        }
        for &f in a.cells(1) {
            if self.f_ll[&a.id(f)] != b.id(self.f_l[&f]) {
                bad("LL", a.name(f).into());
            }
        }
        for &al in a.cells(2) {
            if self.f_lll[&a.id(al)] != b.id(self.f_ll[&al]) {
                bad("LLL", a.name(al).into());
            }
        }
        for &f in a.cells(1) {
            let (s, t) = (a.src(f), a.tgt(f));
            if self.f_v[&(a.id(t), f)] != b.id(self.f_l[&f]) {
                bad("V", format!("1 {}", a.name(f)));
            }
            if self.f_v[&(f, a.id(s))] != b.id(self.f_l[&f]) {
                bad("V", format!("{} 1", a.name(f)));
            }
        }
        for (g, f) in composable_pairs(a) {
            let unit = b.id(self.f_v[&(g, f)]);
            let a0 = a.id(a.src(f));
            let a1 = a.id(a.src(g));
            let a2 = a.id(a.tgt(g));
            if self.f_w[&(g, f, a0)] != unit
                || self.f_w[&(g, a1, f)] != unit
                || self.f_w[&(a2, g, f)] != unit
            {
                bad("W", format!("{} {}", a.name(g), a.name(f)));
            }
            if self.f_vr[&(g, a.id(f))] != unit {
                bad("VR", format!("{} 1[{}]", a.name(g), a.name(f)));
            }
            if self.f_vl[&(a.id(g), f)] != unit {
                bad("VL", format!("1[{}] {}", a.name(g), a.name(f)));
            }
        }
        for &al in a.cells(2) {
            let t0 = a.tgt_at(al, 0);
            if self.f_vr[&(a.id(t0), al)] != b.id(self.f_ll[&al]) {
                bad("VR", format!("1 {}", a.name(al)));
            }
            let s0 = a.src_at(al, 0);
            if self.f_vl[&(al, a.id(s0))] != b.id(self.f_ll[&al]) {
                bad("VL", format!("{} 1", a.name(al)));
            }
        }
    }

    fn check_coherences(&self, report: &mut OplaxReport) {
        let a = &self.source;
        let non_id = |c: &Cell| !a.is_identity(*c);
        let ones: Vec<Cell> = a.cells(1).iter().copied().filter(non_id).collect();
        let twos: Vec<Cell> = a.cells(2).iter().copied().filter(non_id).collect();
        let threes: Vec<Cell> = a.cells(3).iter().copied().filter(non_id).collect();

        let mut check = |shape: Shape,
                         witness: String,
                         lhs: Result<Cell, String>,
                         rhs: Result<Cell, String>| {
            let ok = matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y);
            if !ok {
                report.violations.push(OplaxViolation {
                    family: format!("coherence:{}", shape.name()),
                    witness,
                });
            }
        };

        // Y: strictness of vertical composition of 2-cells.
        for &be in &twos {
            for &al in &twos {
                if a.tgt(al) != a.src(be) {
                    continue;
                }
                let b = self.tgt_cat();
                let lhs = b.chain(1, &[self.f_ll[&be], self.f_ll[&al]]);
                let rhs = a
                    .comp(1, be, al)
                    .ok_or_else(|| "source composite".to_string())
                    .map(|c| self.f_ll[&c]);
                check(Shape::Y, self.wit2(be, al), lhs, rhs);
            }
        }

        // VV: the pentagon on quadruples of composable 1-cells.
        for &i in &ones {
            for &h in &ones {
                if a.tgt(h) != a.src(i) {
                    continue;
                }
                for &g in &ones {
                    if a.tgt(g) != a.src(h) {
                        continue;
                    }
                    for &f in &ones {
                        if a.tgt(f) != a.src(g) {
                            continue;
                        }
                        let (lhs, rhs) = self.pentagon_sides(i, h, g, f);
                        check(
                            Shape::VV,
                            format!(
                                "{} {} {} {}",
                                a.name(i),
                                a.name(h),
                                a.name(g),
                                a.name(f)
                            ),
                            lhs,
                            rhs,
                        );
                    }
                }
            }
        }

        // WL / WM / WR: a 2-cell among two 1-cells.
        for &al in &twos {
            for &g in &ones {
                for &f in &ones {
                    if a.tgt(f) == a.src(g) && a.tgt(g) == a.src_at(al, 0) {
                        let (lhs, rhs) = self.wl_sides(al, g, f);
                        check(Shape::WL, self.wit3(al, g, f), lhs, rhs);
                    }
                    if a.tgt(f) == a.src_at(al, 0) && a.tgt_at(al, 0) == a.src(g) {
                        let (lhs, rhs) = self.wm_sides(g, al, f);
                        check(Shape::WM, self.wit3(g, al, f), lhs, rhs);
                    }
                    if a.tgt_at(al, 0) == a.src(f) && a.tgt(f) == a.src(g) {
                        let (lhs, rhs) = self.wr_sides(g, f, al);
                        check(Shape::WR, self.wit3(g, f, al), lhs, rhs);
                    }
                }
            }
        }

        // YR / YL: whiskering a vertical composite.
        for &be in &twos {
            for &al in &twos {
                if a.tgt(al) != a.src(be) {
                    continue;
                }
                for &g in &ones {
                    if a.tgt_at(al, 0) == a.src(g) {
                        let (lhs, rhs) = self.yr_sides(g, be, al);
                        check(Shape::YR, self.wit3(g, be, al), lhs, rhs);
                    }
                    if a.tgt(g) == a.src_at(al, 0) {
                        let (lhs, rhs) = self.yl_sides(be, al, g);
                        check(Shape::YL, self.wit3(be, al, g), lhs, rhs);
                    }
                }
            }
        }

        // VLR: horizontal composition of two 2-cells.
        for &be in &twos {
            for &al in &twos {
                if a.tgt_at(al, 0) != a.src_at(be, 0) {
                    continue;
                }
                let (lhs, rhs) = self.vlr_sides(be, al);
                check(Shape::VLR, self.wit2(be, al), lhs, rhs);
            }
        }

        // YY: triple vertical composition; both sides are identities of the
        // same 2-cell once Y holds, checked literally.
        for &ga in &twos {
            for &be in &twos {
                if a.tgt(be) != a.src(ga) {
                    continue;
                }
                for &al in &twos {
                    if a.tgt(al) != a.src(be) {
                        continue;
                    }
                    let b = self.tgt_cat();
                    let lhs = b.chain(1, &[self.f_ll[&ga], self.f_ll[&be], self.f_ll[&al]]);
                    let rhs = a
                        .chain(1, &[ga, be, al])
                        .map(|c| self.f_ll[&c]);
                    check(Shape::YY, self.wit3(ga, be, al), lhs, rhs);
                }
            }
        }

        // ZZ: functoriality on ∘₂ of 3-cells.
        for &de in &threes {
            for &ga in &threes {
                if a.tgt(ga) != a.src(de) {
                    continue;
                }
                let b = self.tgt_cat();
                let lhs = b.chain(2, &[self.f_lll[&de], self.f_lll[&ga]]);
                let rhs = a
                    .comp(2, de, ga)
                    .ok_or_else(|| "source composite".to_string())
                    .map(|c| self.f_lll[&c]);
                check(Shape::ZZ, self.wit2(de, ga), lhs, rhs);
            }
        }

        // ZY / YZ: a 3-cell above or below a 2-cell.
        for &ga in &threes {
            for &al in &twos {
                if a.tgt(al) == a.src_at(ga, 1) {
                    let b = self.tgt_cat();
                    let lhs = b.chain(1, &[self.f_lll[&ga], self.f_ll[&al]]);
                    let rhs = a
                        .comp_promoted(1, ga, al)
                        .map(|c| self.f_lll[&c]);
                    check(Shape::ZY, self.wit2(ga, al), lhs, rhs);
                }
                if a.tgt_at(ga, 1) == a.src(al) {
                    let b = self.tgt_cat();
                    let lhs = b.chain(1, &[self.f_ll[&al], self.f_lll[&ga]]);
                    let rhs = a
                        .comp_promoted(1, al, ga)
                        .map(|c| self.f_lll[&c]);
                    check(Shape::YZ, self.wit2(al, ga), lhs, rhs);
                }
            }
        }

        // ZL / LZ: whiskering a 3-cell with a 1-cell, as the naturality
        // square of VL (resp. VR) in its 2-cell argument.
        for &ga in &threes {
            for &f in &ones {
                if a.tgt(f) == a.src_at(ga, 0) {
                    let (lhs, rhs) = self.zl_sides(ga, f);
                    check(Shape::ZL, self.wit2(ga, f), lhs, rhs);
                }
                if a.tgt_at(ga, 0) == a.src(f) {
                    let (lhs, rhs) = self.lz_sides(f, ga);
                    check(Shape::LZ, self.wit2(f, ga), lhs, rhs);
                }
            }
        }
    }

    fn wit2(&self, x: Cell, y: Cell) -> String {
        format!("{} {}", self.source.name(x), self.source.name(y))
    }

    fn wit3(&self, x: Cell, y: Cell, z: Cell) -> String {
        format!("{} {} {}", self.source.name(x), self.source.name(y), self.source.name(z))
    }

    fn pentagon_sides(
        &self,
        i: Cell,
        h: Cell,
        g: Cell,
        f: Cell,
    ) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let gf = a.comp(0, g, f).ok_or("gf")?;
            let hg = a.comp(0, h, g).ok_or("hg")?;
            let ih = a.comp(0, i, h).ok_or("ih")?;
            let hgf = a.comp(0, h, gf).ok_or("hgf")?;
            let ihg = a.comp(0, i, hg).ok_or("ihg")?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_v[&(i, h)], self.f_l[&g], self.f_l[&f]])?,
                            self.f_w[&(ih, g, f)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&i], self.f_l[&h], self.f_v[&(g, f)]])?,
                            self.f_w[&(i, h, gf)],
                        ],
                    )?,
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_w[&(i, h, g)], self.f_l[&f]])?,
                            self.f_v[&(ihg, f)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&i], self.f_v[&(h, g)], self.f_l[&f]])?,
                            self.f_w[&(i, hg, f)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&i], self.f_w[&(h, g, f)]])?,
                            self.f_v[&(i, hgf)],
                        ],
                    )?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn wl_sides(&self, al: Cell, g: Cell, f: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let h = a.src(al);
            let hp = a.tgt(al);
            let gf = a.comp(0, g, f).ok_or("gf")?;
            let hg = a.comp(0, h, g).ok_or("hg")?;
            let alg = a.comp_promoted(0, al, g)?;
            let algf = a.comp_promoted(0, al, gf)?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_ll[&al], self.f_l[&g], self.f_l[&f]])?,
                            self.f_w[&(h, g, f)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&hp], self.f_v[&(g, f)]])?,
                            self.f_vl[&(al, gf)],
                        ],
                    )?,
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_vl[&(al, g)], self.f_l[&f]])?, self.f_v[&(hg, f)]],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_v[&(hp, g)], self.f_l[&f]])?,
                            self.f_vl[&(alg, f)],
                        ],
                    )?,
                    b.chain(1, &[self.f_w[&(hp, g, f)], self.f_ll[&algf]])?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn wm_sides(&self, h: Cell, al: Cell, f: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let g = a.src(al);
            let gp = a.tgt(al);
            let hal = a.comp_promoted(0, h, al)?;
            let half = a.comp_promoted(0, hal, a.id(f))?;
            let alf = a.comp_promoted(0, al, f)?;
            let hg = a.comp(0, h, g).ok_or("hg")?;
            let gf = a.comp(0, g, f).ok_or("gf")?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_v[&(h, gp)], self.f_l[&f]])?,
                            self.f_vl[&(hal, f)],
                        ],
                    )?,
                    b.chain(1, &[self.f_w[&(h, gp, f)], self.f_ll[&half]])?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&h], self.f_v[&(gp, f)]])?,
                            self.f_vr[&(h, alf)],
                        ],
                    )?,
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_vr[&(h, al)], self.f_l[&f]])?, self.f_v[&(hg, f)]],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&h], self.f_ll[&al], self.f_l[&f]])?,
                            self.f_w[&(h, g, f)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&h], self.f_vl[&(al, f)]])?,
                            self.f_v[&(h, gf)],
                        ],
                    )?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn wr_sides(&self, h: Cell, g: Cell, al: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let f = a.src(al);
            let fp = a.tgt(al);
            let hg = a.comp(0, h, g).ok_or("hg")?;
            let gf = a.comp(0, g, f).ok_or("gf")?;
            let gal = a.comp_promoted(0, g, al)?;
            let hgal = a.comp_promoted(0, a.id(h), gal)?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_v[&(h, g)], self.f_l[&fp]])?,
                            self.f_vr[&(hg, al)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&h], self.f_l[&g], self.f_ll[&al]])?,
                            self.f_w[&(h, g, f)],
                        ],
                    )?,
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    b.chain(1, &[self.f_w[&(h, g, fp)], self.f_ll[&hgal]])?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&h], self.f_v[&(g, fp)]])?,
                            self.f_vr[&(h, gal)],
                        ],
                    )?,
                    b.chain(
                        1,
                        &[
                            b.chain(0, &[self.f_l[&h], self.f_vr[&(g, al)]])?,
                            self.f_v[&(h, gf)],
                        ],
                    )?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn yr_sides(&self, g: Cell, be: Cell, al: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let beal = a.comp(1, be, al).ok_or("β∘₁α")?;
            let gal = a.comp_promoted(0, g, al)?;
            let lhs = self.f_vr[&(g, beal)];
            let rhs = b.chain(
                2,
                &[
                    b.chain(1, &[self.f_vr[&(g, be)], self.f_ll[&gal]])?,
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_l[&g], self.f_ll[&be]])?, self.f_vr[&(g, al)]],
                    )?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn yl_sides(&self, be: Cell, al: Cell, f: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let beal = a.comp(1, be, al).ok_or("β∘₁α")?;
            let alf = a.comp_promoted(0, al, f)?;
            let lhs = self.f_vl[&(beal, f)];
            let rhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_ll[&be], self.f_l[&f]])?, self.f_vl[&(al, f)]],
                    )?,
                    b.chain(1, &[self.f_vl[&(be, f)], self.f_ll[&alf]])?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn vlr_sides(&self, be: Cell, al: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let f = a.src(al);
            let fp = a.tgt(al);
            let g = a.src(be);
            let gp = a.tgt(be);
            let gal = a.comp_promoted(0, g, al)?;
            let bef = a.comp_promoted(0, be, f)?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_ll[&be], self.f_l[&fp]])?, self.f_vr[&(g, al)]],
                    )?,
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_l[&gp], self.f_ll[&al]])?, self.f_vl[&(be, f)]],
                    )?,
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    b.chain(1, &[self.f_vl[&(be, fp)], self.f_ll[&gal]])?,
                    b.chain(1, &[self.f_vr[&(gp, al)], self.f_ll[&bef]])?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn zl_sides(&self, ga: Cell, f: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let be = a.src(ga);
            let bep = a.tgt(ga);
            let g = a.src(be);
            let gp = a.tgt(be);
            let gaf = a.comp_promoted(0, ga, f)?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_lll[&ga], self.f_l[&f]])?, self.f_v[&(g, f)]],
                    )?,
                    self.f_vl[&(be, f)],
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    self.f_vl[&(bep, f)],
                    b.chain(1, &[self.f_v[&(gp, f)], self.f_lll[&gaf]])?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    fn lz_sides(&self, g: Cell, ga: Cell) -> (Result<Cell, String>, Result<Cell, String>) {
        let a = &self.source;
        let b = self.tgt_cat();
        let go = || -> Result<(Cell, Cell), String> {
            let al = a.src(ga);
            let alp = a.tgt(ga);
            let f = a.src(al);
            let fp = a.tgt(al);
            let gga = a.comp_promoted(0, a.id(a.id(g)), ga)?;
            let lhs = b.chain(
                2,
                &[
                    b.chain(1, &[self.f_v[&(g, fp)], self.f_lll[&gga]])?,
                    self.f_vr[&(g, al)],
                ],
            )?;
            let rhs = b.chain(
                2,
                &[
                    self.f_vr[&(g, alp)],
                    b.chain(
                        1,
                        &[b.chain(0, &[self.f_l[&g], self.f_lll[&ga]])?, self.f_v[&(g, f)]],
                    )?,
                ],
            )?;
            Ok((lhs, rhs))
        };
        split(go())
    }

    /// The label the induced simplicial map puts on a tuple of the image
    /// simplex.
    fn image_label(&self, x: &Simplex, tuple: &[u8]) -> Result<Cell, String> {
        let b = self.tgt_cat();
        match tuple.len() {
            1 => Ok(self.f_dot[&x.label(tuple)]),
            2 => Ok(self.f_l[&x.label(tuple)]),
            3 => {
                let e01 = x.label(&[tuple[0], tuple[1]]);
                let e12 = x.label(&[tuple[1], tuple[2]]);
                b.chain(1, &[self.f_v[&(e12, e01)], self.f_ll[&x.label(tuple)]])
            }
            4 => {
                let f = x.label(&[tuple[0], tuple[1]]);
                let g = x.label(&[tuple[1], tuple[2]]);
                let h = x.label(&[tuple[2], tuple[3]]);
                let beta = x.label(&[tuple[0], tuple[1], tuple[2]]);
                let alpha = x.label(&[tuple[0], tuple[2], tuple[3]]);
                let delta = x.label(&[tuple[1], tuple[2], tuple[3]]);
                let gamma = x.label(&[tuple[0], tuple[1], tuple[3]]);
                let big = x.label(tuple);
                b.chain(
                    2,
                    &[
                        b.chain(
                            1,
                            &[
                                b.chain(0, &[self.f_v[&(h, g)], self.f_l[&f]])?,
                                self.f_vl[&(delta, f)],
                                self.f_ll[&gamma],
                            ],
                        )?,
                        b.chain(1, &[self.f_w[&(h, g, f)], self.f_lll[&big]])?,
                        b.chain(
                            1,
                            &[
                                b.chain(0, &[self.f_l[&h], self.f_v[&(g, f)]])?,
                                self.f_vr[&(h, beta)],
                                self.f_ll[&alpha],
                            ],
                        )?,
                    ],
                )
            }
            _ => Err("tuple too long".into()),
        }
    }

    /// Image of a simplex of the source nerve under the induced simplicial
    /// map; the result is assembled and therefore re-checked.
    pub fn nerve_image(&self, x: &Simplex) -> Result<Simplex, String> {
        let mut labels = BTreeMap::new();
        for len in 1..=(x.dim + 1).min(4) {
            for t in tuples(x.dim as u8, len) {
                labels.insert(t.clone(), self.image_label(x, &t)?);
            }
        }
        Simplex::assemble(self.tgt_cat(), x.dim, labels)
    }

    /// Assembles the induced simplicial map on the whole 4-truncated nerve.
    pub fn to_simplicial(&self) -> Result<SimplicialMap, String> {
        let mut m = SimplicialMap::new();
        for k in 0..=4 {
            for s in nerve::nondegenerate_simplices(&self.source, k) {
                let image = self.nerve_image(&s)?;
                m.images[k].insert(s, image);
            }
        }
        Ok(m)
    }

    /// Composition `G ∘ self` of normalised oplax 3-functors.
    pub fn then(&self, g: &OplaxData) -> Result<OplaxData, String> {
        compose(g, self)
    }
}

/// The category of elements of the nerve of `c`, restricted to its
/// non-degenerate simplices of dimension ≤ `max_dim`; morphisms are the
/// strictly increasing reindexings, embedded as a 3-category with only
/// identity higher cells.
pub struct SliceCat {
    pub cat: FiniteThreeCat,
    pub objects: Vec<Simplex>,
    /// value vector, source object index, target object index, per 1-cell
    /// (identity 1-cells carry the identity reindexing).
    pub arrow_data: BTreeMap<Cell, (Vec<u8>, usize, usize)>,
}

pub fn slice_of_nerve(c: &FiniteThreeCat, max_dim: usize) -> SliceCat {
    let mut objects: Vec<Simplex> = Vec::new();
    for k in 0..=max_dim {
        objects.extend(nerve::nondegenerate_simplices(c, k));
    }
    let index_of: std::collections::HashMap<&Simplex, usize> =
        objects.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut arrow_vals: Vec<(Vec<u8>, usize, usize)> = Vec::new();
    let mut arrow_index: std::collections::HashMap<(Vec<u8>, usize, usize), usize> =
        std::collections::HashMap::new();
    for (yi, y) in objects.iter().enumerate() {
        for m in 0..=y.dim {
            for vals in injections(m as u8, y.dim as u8) {
                if m == y.dim {
                    continue; // only the identity, which is not an arrow
                }
                let x = y.pullback(c, &vals);
                if let Some(&xi) = index_of.get(&x) {
                    let name = format!(
                        "o{xi}-[{}]-o{yi}",
                        vals.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
                    );
                    arrow_index.insert((vals.clone(), xi, yi), arrows.len());
                    arrow_vals.push((vals, xi, yi));
                    arrows.push((name, xi, yi));
                }
            }
        }
    }
    let mut comp = BTreeMap::new();
    for (gi, (gvals, gs, gt)) in arrow_vals.iter().enumerate() {
        for (fi, (fvals, fs, ft)) in arrow_vals.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let hvals: Vec<u8> = fvals.iter().map(|v| gvals[*v as usize]).collect();
            let hi = arrow_index[&(hvals, *fs, *gt)];
            comp.insert((gi, fi), Some(hi));
        }
    }
    let one = crate::cat3::OneCat {
        objects: (0..objects.len()).map(|i| format!("o{i}")).collect(),
        arrows,
        comp,
    };
    let cat = one.embed().expect("slice category is a category");
    let mut arrow_data = BTreeMap::new();
    for (i, (vals, s, t)) in arrow_vals.iter().enumerate() {
        let cell = cat.by_name(&one.arrows[i].0).unwrap();
        arrow_data.insert(cell, (vals.clone(), *s, *t));
    }
    for (i, _) in objects.iter().enumerate() {
        let o = cat.by_name(&format!("o{i}")).unwrap();
        let id1 = cat.id(o);
        let dim = objects[i].dim as u8;
        arrow_data.insert(id1, ((0..=dim).collect(), i, i));
    }
    SliceCat { cat, objects, arrow_data }
}

fn injections(m: u8, n: u8) -> Vec<Vec<u8>> {
    fn rec(m: u8, n: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == (m + 1) as usize {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map(|v| v + 1).unwrap_or(0);
        for v in start..=n {
            cur.push(v);
            rec(m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out
}

/// The normalised oplax 3-functor from the slice of the nerve of `c` back to
/// `c`, sending a simplex to its last vertex and a reindexing to the
/// corresponding final-segment label of its codomain.
pub fn sup_functor(c: &FiniteThreeCat, max_dim: usize) -> OplaxData {
    let slice = slice_of_nerve(c, max_dim);
    let a = &slice.cat;
    let last = |i: usize| -> u8 { slice.objects[i].dim as u8 };
    let f_dot: BTreeMap<Cell, Cell> = (0..slice.objects.len())
        .map(|i| {
            let o = a.by_name(&format!("o{i}")).unwrap();
            (o, slice.objects[i].label(&[last(i)]))
        })
        .collect();
    let mut f_l = BTreeMap::new();
    for (cell, (vals, src, tgt)) in &slice.arrow_data {
        let y = &slice.objects[*tgt];
        let v = y.label_weak(c, &[vals[last(*src) as usize], last(*tgt)]);
        f_l.insert(*cell, v);
    }
    let mut by_tgt: std::collections::HashMap<Cell, Vec<Cell>> = std::collections::HashMap::new();
    for cell in slice.arrow_data.keys() {
        by_tgt.entry(a.tgt(*cell)).or_default().push(*cell);
    }
    let empty: Vec<Cell> = Vec::new();
    let into = |o: Cell| -> &Vec<Cell> { by_tgt.get(&o).unwrap_or(&empty) };
    let mut f_v = BTreeMap::new();
    for (gc, (gvals, _, gt)) in &slice.arrow_data {
        for fc in into(a.src(*gc)) {
            let (fvals, fs, ft) = &slice.arrow_data[fc];
            let z = &slice.objects[*gt];
            let m = last(*fs);
            let v = z.label_weak(
                c,
                &[gvals[fvals[m as usize] as usize], gvals[last(*ft) as usize], last(*gt)],
            );
            f_v.insert((*gc, *fc), v);
        }
    }
    let mut f_w = BTreeMap::new();
    for (hc, (hvals, _, ht)) in &slice.arrow_data {
        for gc in into(a.src(*hc)) {
            let (gvals, _, gt) = &slice.arrow_data[gc];
            for fc in into(a.src(*gc)) {
                let (fvals, fs, ft) = &slice.arrow_data[fc];
                let t = &slice.objects[*ht];
                let m = last(*fs);
                let w = t.label_weak(
                    c,
                    &[
                        hvals[gvals[fvals[m as usize] as usize] as usize],
                        hvals[gvals[last(*ft) as usize] as usize],
                        hvals[last(*gt) as usize],
                        last(*ht),
                    ],
                );
                f_w.insert((*hc, *gc, *fc), w);
            }
        }
    }
    // Higher cells of the slice are identities; the remaining maps are
    // normalisation-forced.
    let f_ll: BTreeMap<Cell, Cell> =
        a.cells(2).iter().map(|x| (*x, c.id(f_l[&a.src(*x)]))).collect();
    let f_lll: BTreeMap<Cell, Cell> =
        a.cells(3).iter().map(|x| (*x, c.id(f_ll[&a.src(*x)]))).collect();
    let f_vr: BTreeMap<(Cell, Cell), Cell> = whisker_right_pairs(a)
        .into_iter()
        .map(|(g, al)| ((g, al), c.id(f_v[&(g, a.src(al))])))
        .collect();
    let f_vl: BTreeMap<(Cell, Cell), Cell> = whisker_left_pairs(a)
        .into_iter()
        .map(|(be, f)| ((be, f), c.id(f_v[&(a.src(be), f)])))
        .collect();
    OplaxData {
        source: a.clone(),
        target: c.clone(),
        f_dot,
        f_l,
        f_ll,
        f_lll,
        f_v,
        f_w,
        f_vr,
        f_vl,
    }
}

fn split(r: Result<(Cell, Cell), String>) -> (Result<Cell, String>, Result<Cell, String>) {
    match r {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

fn tuples(max: u8, len: usize) -> Vec<Vec<u8>> {
    fn rec(max: u8, len: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map(|v| v + 1).unwrap_or(0);
        for v in start..=max {
            cur.push(v);
            rec(max, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, len, &mut Vec::new(), &mut out);
    out
}

/// Extracts the normalised oplax 3-functor underlying a simplicial oplax
/// 3-morphism. Errors when the map is not simplicial, or when one of the
/// three defining conditions fails.
pub fn from_simplicial(
    a: &FiniteThreeCat,
    b: &FiniteThreeCat,
    m: &SimplicialMap,
) -> Result<OplaxData, String> {
    use crate::simplicial;
    m.verify(a, b)?;
    let violations = simplicial::simplicial_oplax_violations(m, a, b);
    if !violations.is_empty() {
        return Err(format!(
            "not simplicial oplax: condition {} at {}",
            violations[0].condition, violations[0].witness
        ));
    }
    let vertex = |o: Cell| {
        Simplex::assemble(a, 0, BTreeMap::from([(vec![0u8], o)])).expect("vertex")
    };
    let edge = |f: Cell| {
        Simplex::assemble(
            a,
            1,
            BTreeMap::from([(vec![0u8], a.src(f)), (vec![1u8], a.tgt(f)), (vec![0u8, 1], f)]),
        )
        .expect("edge")
    };
    let f_dot: BTreeMap<Cell, Cell> = a
        .cells(0)
        .iter()
        .map(|o| (*o, m.apply(a, b, &vertex(*o)).principal(b)))
        .collect();
    let f_l: BTreeMap<Cell, Cell> = a
        .cells(1)
        .iter()
        .map(|f| (*f, m.apply(a, b, &edge(*f)).principal(b)))
        .collect();
    let f_ll: BTreeMap<Cell, Cell> = a
        .cells(2)
        .iter()
        .map(|al| {
            let (left, _) = simplicial::two_cell_simplices(a, *al);
            (*al, m.apply(a, b, &left).principal(b))
        })
        .collect();
    let f_lll: BTreeMap<Cell, Cell> = a
        .cells(3)
        .iter()
        .map(|ga| {
            (*ga, m.apply(a, b, &simplicial::lll_template(a, *ga)).principal(b))
        })
        .collect();
    let f_v: BTreeMap<(Cell, Cell), Cell> = composable_pairs(a)
        .into_iter()
        .map(|(g, f)| {
            ((g, f), m.apply(a, b, &simplicial::comp_triangle(a, g, f)).principal(b))
        })
        .collect();
    let f_w: BTreeMap<(Cell, Cell, Cell), Cell> = composable_triples(a)
        .into_iter()
        .map(|(h, g, f)| {
            ((h, g, f), m.apply(a, b, &simplicial::w_template(a, h, g, f)).principal(b))
        })
        .collect();
    let f_vr: BTreeMap<(Cell, Cell), Cell> = whisker_right_pairs(a)
        .into_iter()
        .map(|(g, al)| {
            ((g, al), m.apply(a, b, &simplicial::vr_template(a, g, al)).principal(b))
        })
        .collect();
    let f_vl: BTreeMap<(Cell, Cell), Cell> = whisker_left_pairs(a)
        .into_iter()
        .map(|(be, f)| {
            ((be, f), m.apply(a, b, &simplicial::vl_template(a, be, f)).principal(b))
        })
        .collect();
    Ok(OplaxData {
        source: a.clone(),
        target: b.clone(),
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

/// The composite `G ∘ F`, by the whisker-layer formulas; certification is a
/// separate `validate` call.
pub fn compose(g: &OplaxData, f: &OplaxData) -> Result<OplaxData, String> {
    if f.target != g.source {
        return Err("source/target mismatch".into());
    }
    let a = &f.source;
    let c = &g.target;
    let f_dot: BTreeMap<Cell, Cell> =
        f.f_dot.iter().map(|(x, y)| (*x, g.f_dot[y])).collect();
    let f_l: BTreeMap<Cell, Cell> = f.f_l.iter().map(|(x, y)| (*x, g.f_l[y])).collect();
    let f_ll: BTreeMap<Cell, Cell> = f.f_ll.iter().map(|(x, y)| (*x, g.f_ll[y])).collect();
    let f_lll: BTreeMap<Cell, Cell> =
        f.f_lll.iter().map(|(x, y)| (*x, g.f_lll[y])).collect();
    let mut f_v = BTreeMap::new();
    for ((p, q), v) in &f.f_v {
        let fv = c.chain(1, &[g.f_v[&(f.f_l[p], f.f_l[q])], g.f_ll[v]])?;
        f_v.insert((*p, *q), fv);
    }
    let mut f_w = BTreeMap::new();
    for ((h, gg, ff), w) in &f.f_w {
        let gf = a.comp(0, *gg, *ff).ok_or("gf")?;
        let hg = a.comp(0, *h, *gg).ok_or("hg")?;
        let (lh, lg, lf) = (f.f_l[h], f.f_l[gg], f.f_l[ff]);
        let top = c.chain(
            1,
            &[
                c.chain(0, &[g.f_v[&(lh, lg)], g.f_l[&lf]])?,
                g.f_vl[&(f.f_v[&(*h, *gg)], lf)],
                g.f_ll[&f.f_v[&(hg, *ff)]],
            ],
        )?;
        let mid = c.chain(1, &[g.f_w[&(lh, lg, lf)], g.f_lll[w]])?;
        let bot = c.chain(
            1,
            &[
                c.chain(0, &[g.f_l[&lh], g.f_v[&(lg, lf)]])?,
                g.f_vr[&(lh, f.f_v[&(*gg, *ff)])],
                g.f_ll[&f.f_v[&(*h, gf)]],
            ],
        )?;
        f_w.insert((*h, *gg, *ff), c.chain(2, &[top, mid, bot])?);
    }
    let mut f_vr = BTreeMap::new();
    for ((gg, al), w) in &f.f_vr {
        let ff = a.src(*al);
        let fp = a.tgt(*al);
        let top = c.chain(1, &[g.f_v[&(f.f_l[gg], f.f_l[&fp])], g.f_lll[w]])?;
        let bot = c.chain(
            1,
            &[g.f_vr[&(f.f_l[gg], f.f_ll[al])], g.f_ll[&f.f_v[&(*gg, ff)]]],
        )?;
        f_vr.insert((*gg, *al), c.chain(2, &[top, bot])?);
    }
    let mut f_vl = BTreeMap::new();
    for ((be, ff), w) in &f.f_vl {
        let gg = a.src(*be);
        let gp = a.tgt(*be);
        let top = c.chain(
            1,
            &[g.f_vl[&(f.f_ll[be], f.f_l[ff])], g.f_ll[&f.f_v[&(gg, *ff)]]],
        )?;
        let bot = c.chain(1, &[g.f_v[&(f.f_l[&gp], f.f_l[ff])], g.f_lll[w]])?;
        f_vl.insert((*be, *ff), c.chain(2, &[top, bot])?);
    }
    Ok(OplaxData {
        source: a.clone(),
        target: c.clone(),
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

/// JSON form of a normalised oplax 3-functor: the two categories inline and
/// the eight maps as key-tuple records.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct OplaxJson {
    pub source: crate::cat3::CatJson,
    pub target: crate::cat3::CatJson,
    pub dot: BTreeMap<String, String>,
    pub l: BTreeMap<String, String>,
    pub ll: BTreeMap<String, String>,
    pub lll: BTreeMap<String, String>,
    pub v: Vec<(String, String, String)>,
    pub w: Vec<(String, String, String, String)>,
    pub vr: Vec<(String, String, String)>,
    pub vl: Vec<(String, String, String)>,
}

impl OplaxData {
    pub fn to_json(&self) -> OplaxJson {
        let a = &self.source;
        let b = &self.target;
        let n1 = |m: &BTreeMap<Cell, Cell>| -> BTreeMap<String, String> {
            m.iter().map(|(x, y)| (a.name(*x).to_string(), b.name(*y).to_string())).collect()
        };
        let mut v: Vec<(String, String, String)> = self
            .f_v
            .iter()
            .map(|((g, f), o)| {
                (a.name(*g).to_string(), a.name(*f).to_string(), b.name(*o).to_string())
            })
            .collect();
        v.sort();
        let mut w: Vec<(String, String, String, String)> = self
            .f_w
            .iter()
            .map(|((h, g, f), o)| {
                (
                    a.name(*h).to_string(),
                    a.name(*g).to_string(),
                    a.name(*f).to_string(),
                    b.name(*o).to_string(),
                )
            })
            .collect();
        w.sort();
        let mut vr: Vec<(String, String, String)> = self
            .f_vr
            .iter()
            .map(|((g, al), o)| {
                (a.name(*g).to_string(), a.name(*al).to_string(), b.name(*o).to_string())
            })
            .collect();
        vr.sort();
        let mut vl: Vec<(String, String, String)> = self
            .f_vl
            .iter()
            .map(|((be, f), o)| {
                (a.name(*be).to_string(), a.name(*f).to_string(), b.name(*o).to_string())
            })
            .collect();
        vl.sort();
        OplaxJson {
            source: a.to_json(),
            target: b.to_json(),
            dot: n1(&self.f_dot),
            l: n1(&self.f_l),
            ll: n1(&self.f_ll),
            lll: n1(&self.f_lll),
            v,
            w,
            vr,
            vl,
        }
    }

    pub fn from_json(j: &OplaxJson) -> Result<OplaxData, String> {
        let a = FiniteThreeCat::from_json(&j.source).map_err(|e| e.to_string())?;
        let b = FiniteThreeCat::from_json(&j.target).map_err(|e| e.to_string())?;
        let cell = |cat: &FiniteThreeCat, n: &str| -> Result<Cell, String> {
            cat.by_name(n).ok_or_else(|| format!("unknown cell {n}"))
        };
        let map1 = |m: &BTreeMap<String, String>| -> Result<BTreeMap<Cell, Cell>, String> {
            m.iter().map(|(x, y)| Ok((cell(&a, x)?, cell(&b, y)?))).collect()
        };
        let f_dot = map1(&j.dot)?;
        let f_l = map1(&j.l)?;
        let f_ll = map1(&j.ll)?;
        let f_lll = map1(&j.lll)?;
        let mut f_v = BTreeMap::new();
        for (g, f, o) in &j.v {
            f_v.insert((cell(&a, g)?, cell(&a, f)?), cell(&b, o)?);
        }
        let mut f_w = BTreeMap::new();
        for (h, g, f, o) in &j.w {
            f_w.insert((cell(&a, h)?, cell(&a, g)?, cell(&a, f)?), cell(&b, o)?);
        }
        let mut f_vr = BTreeMap::new();
        for (g, al, o) in &j.vr {
            f_vr.insert((cell(&a, g)?, cell(&a, al)?), cell(&b, o)?);
        }
        let mut f_vl = BTreeMap::new();
        for (be, f, o) in &j.vl {
            f_vl.insert((cell(&a, be)?, cell(&a, f)?), cell(&b, o)?);
        }
        Ok(OplaxData {
            source: a,
            target: b,
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
}
