//! Augmented directed complexes with basis.
//!
//! An [`Adc`] stores a graded basis, the differential of each positive-degree
//! generator and the augmentation of each degree-0 generator. The positivity
//! cone in each degree is the one generated by the basis. Construction checks
//! `d∘d = 0` and `e∘d₁ = 0`; the Steiner diagnostics (unitality and the two
//! loop-freeness conditions) are separate queries.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::chains::{tuple_name, Chain};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdcError {
    #[error("duplicate basis name {0}")]
    DuplicateName(String),
    #[error("differential of {0} has wrong degree")]
    DiffDegree(String),
    #[error("differential of {0} mentions unknown generator {1}")]
    UnknownGenerator(String, String),
    #[error("missing differential for {0}")]
    MissingDiff(String),
    #[error("missing augmentation for {0}")]
    MissingAug(String),
    #[error("d∘d ≠ 0 at generator {0}")]
    DdNotZero(String),
    #[error("e∘d₁ ≠ 0 at generator {0}")]
    AugDiffNotZero(String),
    #[error("relation is not a strict partial order: {0}")]
    NotAPartialOrder(String),
}

/// A finite poset on elements `0..n`, given by its strict order relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poset {
    pub size: usize,
    /// `lt[i][j]` iff `i < j` in the poset.
    pub lt: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from a set of strict relations, closing transitively.
    /// Rejects relations whose closure is reflexive or fails antisymmetry.
    pub fn from_relations(size: usize, pairs: &[(usize, usize)]) -> Result<Poset, AdcError> {
        let mut lt = vec![vec![false; size]; size];
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(AdcError::NotAPartialOrder(format!("element out of range: ({a},{b})")));
            }
            lt[a][b] = true;
        }
        // Floyd–Warshall transitive closure.
        for k in 0..size {
            for i in 0..size {
                if lt[i][k] {
                    for j in 0..size {
                        if lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            if lt[i][i] {
                return Err(AdcError::NotAPartialOrder(format!("cycle through {i}")));
            }
            for j in 0..size {
                if lt[i][j] && lt[j][i] {
                    return Err(AdcError::NotAPartialOrder(format!("{i} and {j} comparable both ways")));
                }
            }
        }
        Ok(Poset { size, lt })
    }

    /// The chain `0 < 1 < … < n`, i.e. the poset underlying `Δⁿ`.
    pub fn total(n: usize) -> Poset {
        let size = n + 1;
        let mut lt = vec![vec![false; size]; size];
        for i in 0..size {
            for j in (i + 1)..size {
                lt[i][j] = true;
            }
        }
        Poset { size, lt }
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    /// All strictly increasing (k+1)-chains of the poset, each rendered in
    /// its chain order, listed lexicographically by element index.
    pub fn chains_of_length(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k + 1);
        self.extend_chain(&mut cur, k + 1, &mut out);
        out
    }

    fn extend_chain(&self, cur: &mut Vec<usize>, want: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == want {
            out.push(cur.clone());
            return;
        }
        for v in 0..self.size {
            if let Some(&last) = cur.last() {
                if !self.lt(last, v) {
                    continue;
                }
            }
            cur.push(v);
            self.extend_chain(cur, want, out);
            cur.pop();
        }
    }
}

/// An augmented directed complex with basis. Deserialisation re-validates
/// through [`Adc::new`], so a loaded complex is always well-formed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AdcJson")]
pub struct Adc {
    /// Basis names per degree; degree `d` lives at index `d`.
    pub basis: Vec<Vec<String>>,
    /// Differential of each generator of degree ≥ 1.
    pub diff: BTreeMap<String, Chain>,
    /// Augmentation of each degree-0 generator.
    pub aug: BTreeMap<String, i64>,
    #[serde(skip)]
    degree_of: HashMap<String, usize>,
}

#[derive(Deserialize)]
struct AdcJson {
    basis: Vec<Vec<String>>,
    diff: BTreeMap<String, Chain>,
    aug: BTreeMap<String, i64>,
}

impl TryFrom<AdcJson> for Adc {
    type Error = AdcError;
    fn try_from(j: AdcJson) -> Result<Adc, AdcError> {
        Adc::new(j.basis, j.diff, j.aug)
    }
}

/// The atom matrix `⟨x⟩` of a chain: two rows of iterated ∓-parts of the
/// differential, with `row0[k] = d(row0[k+1])₋` and `row1[k] = d(row1[k+1])₊`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomMatrix {
    pub dim: usize,
    pub row0: Vec<Chain>,
    pub row1: Vec<Chain>,
}

impl Adc {
    pub fn new(
        basis: Vec<Vec<String>>,
        diff: BTreeMap<String, Chain>,
        aug: BTreeMap<String, i64>,
    ) -> Result<Adc, AdcError> {
        let mut degree_of = HashMap::new();
        for (d, names) in basis.iter().enumerate() {
            for name in names {
                if degree_of.insert(name.clone(), d).is_some() {
                    return Err(AdcError::DuplicateName(name.clone()));
                }
            }
        }
        for (d, names) in basis.iter().enumerate() {
            for name in names {
                if d == 0 {
                    if !aug.contains_key(name) {
                        return Err(AdcError::MissingAug(name.clone()));
                    }
                } else {
                    let dc = diff.get(name).ok_or_else(|| AdcError::MissingDiff(name.clone()))?;
                    if dc.degree != d - 1 {
                        return Err(AdcError::DiffDegree(name.clone()));
                    }
                    for g in dc.coeffs.keys() {
                        if degree_of.get(g) != Some(&(d - 1)) {
                            return Err(AdcError::UnknownGenerator(name.clone(), g.clone()));
                        }
                    }
                }
            }
        }
        let adc = Adc { basis, diff, aug, degree_of };
        for d in 2..adc.basis.len() {
            for name in &adc.basis[d] {
                let dd = adc.boundary(&adc.diff[name]);
                if !dd.is_zero() {
                    return Err(AdcError::DdNotZero(name.clone()));
                }
            }
        }
        if adc.basis.len() > 1 {
            for name in &adc.basis[1] {
                if adc.augment(&adc.diff[name]) != 0 {
                    return Err(AdcError::AugDiffNotZero(name.clone()));
                }
            }
        }
        Ok(adc)
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn degree_of(&self, name: &str) -> Option<usize> {
        self.degree_of.get(name).copied()
    }

    /// Linear extension of the differential to a chain. Degree-0 chains map
    /// to the zero chain by the `d(b) = 0` convention.
    pub fn boundary(&self, x: &Chain) -> Chain {
        if x.degree == 0 {
            return Chain::zero(0);
        }
        let mut acc = Chain::zero(x.degree - 1);
        for (name, c) in &x.coeffs {
            let d = self.diff.get(name).expect("generator in complex");
            acc = acc.add(&d.scale(*c)).expect("degrees agree");
        }
        acc
    }

    /// Linear extension of the augmentation to a degree-0 chain.
    pub fn augment(&self, x: &Chain) -> i64 {
        debug_assert_eq!(x.degree, 0);
        x.coeffs.iter().map(|(name, c)| self.aug.get(name).copied().unwrap_or(0) * c).sum()
    }

    /// The atom matrix of a chain of the given degree.
    pub fn atom(&self, x: &Chain) -> AtomMatrix {
        let dim = x.degree;
        let mut row0 = vec![Chain::zero(0); dim + 1];
        let mut row1 = vec![Chain::zero(0); dim + 1];
        row0[dim] = x.clone();
        row1[dim] = x.clone();
        for k in (1..=dim).rev() {
            let (_, minus) = self.boundary(&row0[k]).decompose_pm();
            row0[k - 1] = minus;
            let (plus, _) = self.boundary(&row1[k]).decompose_pm();
            row1[k - 1] = plus;
        }
        AtomMatrix { dim, row0, row1 }
    }

    /// Atom of a named generator.
    pub fn atom_of(&self, name: &str) -> AtomMatrix {
        let d = self.degree_of(name).expect("generator in complex");
        self.atom(&Chain::generator(name, d))
    }

    /// Every basis atom has augmentation 1 at both degree-0 corners.
    pub fn is_unital_basis(&self) -> bool {
        self.basis.iter().flatten().all(|name| {
            let a = self.atom_of(name);
            self.augment(&a.row0[0]) == 1 && self.augment(&a.row1[0]) == 1
        })
    }

    fn all_names(&self) -> Vec<&String> {
        self.basis.iter().flatten().collect()
    }

    /// Antisymmetry of every preorder `≤_i` generated by
    /// `supp⟨x⟩¹_i ∩ supp⟨y⟩⁰_i ≠ ∅` on generators of degree > i.
    pub fn is_loop_free(&self) -> bool {
        let names = self.all_names();
        let atoms: Vec<AtomMatrix> = names.iter().map(|n| self.atom_of(n)).collect();
        for level in 0..self.basis.len() {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for (xi, x) in names.iter().enumerate() {
                if self.degree_of(x).unwrap() <= level {
                    continue;
                }
                let sup_x: HashSet<_> = atoms[xi].row1[level].support().into_iter().collect();
                for (yi, y) in names.iter().enumerate() {
                    if self.degree_of(y).unwrap() <= level || xi == yi {
                        continue;
                    }
                    let sup_y = atoms[yi].row0[level].support();
                    if sup_y.iter().any(|n| sup_x.contains(n)) {
                        edges.push((xi, yi));
                    }
                }
            }
            if has_cycle(names.len(), &edges) {
                return false;
            }
        }
        true
    }

    /// Antisymmetry of the preorder `≤_N` generated by
    /// `x ∈ supp d(y)₋  or  y ∈ supp d(x)₊`.
    pub fn is_strongly_loop_free(&self) -> bool {
        let names = self.all_names();
        let index: HashMap<&String, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (yi, y) in names.iter().enumerate() {
            let d = if self.degree_of(y).unwrap() == 0 {
                Chain::zero(0)
            } else {
                self.diff[*y].clone()
            };
            let (plus, minus) = d.decompose_pm();
            // x ≤N y for x in supp d(y)₋, and y ≤N x for x in supp d(y)₊.
            for x in minus.support() {
                edges.push((index[&x], yi));
            }
            for x in plus.support() {
                edges.push((yi, index[&x]));
            }
        }
        !has_cycle(names.len(), &edges)
    }

    /// The complex of the nerve of a poset: generators in degree p are the
    /// strictly increasing (p+1)-chains, with the alternating face sum as
    /// differential and augmentation 1 on vertices.
    pub fn oriental_complex(poset: &Poset) -> Adc {
        let mut basis: Vec<Vec<String>> = Vec::new();
        let mut diff = BTreeMap::new();
        let mut aug = BTreeMap::new();
        for k in 0.. {
            let chains = poset.chains_of_length(k);
            if chains.is_empty() {
                break;
            }
            let mut names = Vec::new();
            for tuple in &chains {
                let name = tuple_name(tuple);
                if k == 0 {
                    aug.insert(name.clone(), 1);
                } else {
                    let faces = (0..=k).map(|omit| {
                        let face: Vec<usize> = tuple
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != omit)
                            .map(|(_, v)| *v)
                            .collect();
                        let sign = if omit % 2 == 0 { 1 } else { -1 };
                        (tuple_name(&face), sign)
                    });
                    diff.insert(name.clone(), Chain::from_pairs(k - 1, faces));
                }
                names.push(name);
            }
            basis.push(names);
        }
        Adc::new(basis, diff, aug).expect("nerve complex is well-formed")
    }

    /// `λΔⁿ`: the oriental complex of the total order on n+1 points.
    pub fn simplex_complex(n: usize) -> Adc {
        Adc::oriental_complex(&Poset::total(n))
    }
}

fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    false
}
