//! Planar rooted trees of bounded height, indexing the data and coherences of
//! normalised oplax 3-functors.
//!
//! A tree corresponds to a matrix of dimensions `(i₁ … i_ℓ / j₁ … j_{ℓ−1})`
//! with `i_k > j_k < i_{k+1}`: the leaves in planar order have depths `i_k`
//! and consecutive leaves meet at depth `j_k`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tree {
    pub children: Vec<Tree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionMatrix {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("matrix rows have incompatible lengths")]
    RowLengths,
    #[error("inequality i_k > j_k < i_(k+1) violated at position {0}")]
    Inequality(usize),
    #[error("a leaf has no matrix of dimensions")]
    Leaf,
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree { children: Vec::new() }
    }

    pub fn node(children: Vec<Tree>) -> Tree {
        Tree { children }
    }

    /// Linear tree with the given height.
    pub fn linear(height: usize) -> Tree {
        let mut t = Tree::leaf();
        for _ in 0..height {
            t = Tree::node(vec![t]);
        }
        t
    }

    /// Number of edges; equals Σi − Σj under the matrix correspondence.
    pub fn dimension(&self) -> usize {
        self.children.iter().map(|c| 1 + c.dimension()).sum()
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| 1 + c.height()).max().unwrap_or(0)
    }

    /// Leaf depths in planar order.
    fn leaf_depths(&self, depth: usize, out: &mut Vec<usize>) {
        if self.children.is_empty() {
            out.push(depth);
        } else {
            for c in &self.children {
                c.leaf_depths(depth + 1, out);
            }
        }
    }

    /// Depth of the meet of consecutive leaves, in planar order.
    fn meets(&self, depth: usize, out: &mut Vec<usize>) {
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                out.push(depth);
            }
            c.meets(depth + 1, out);
        }
    }
}

pub fn matrix_from_tree(t: &Tree) -> Result<DimensionMatrix, TreeError> {
    if t.children.is_empty() {
        // The point D₀ is the 1×0 matrix (0 / ).
        return Ok(DimensionMatrix { upper: vec![0], lower: vec![] });
    }
    let mut upper = Vec::new();
    t.leaf_depths(0, &mut upper);
    let mut lower = Vec::new();
    t.meets(0, &mut lower);
    Ok(DimensionMatrix { upper, lower })
}

pub fn tree_from_matrix(m: &DimensionMatrix) -> Result<Tree, TreeError> {
    if m.upper.is_empty() || m.lower.len() + 1 != m.upper.len() {
        return Err(TreeError::RowLengths);
    }
    for (k, j) in m.lower.iter().enumerate() {
        if !(m.upper[k] > *j && *j < m.upper[k + 1]) {
            return Err(TreeError::Inequality(k));
        }
    }
    // Grow the rightmost path: each new leaf branches off at depth j_k.
    let mut root = Tree::linear(m.upper[0]);
    for (k, &height) in m.upper.iter().enumerate().skip(1) {
        let fork = m.lower[k - 1];
        let mut node = &mut root;
        for _ in 0..fork {
            node = node.children.last_mut().expect("rightmost path long enough");
        }
        node.children.push(Tree::linear(height - fork - 1));
    }
    Ok(root)
}

/// The tree shapes indexing the data of a normalised oplax 3-functor and its
/// coherence families. Stable names appear in validator reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    // data
    Dot,
    L,
    LL,
    LLL,
    V,
    W,
    VR,
    VL,
    // coherences
    Y,
    VV,
    WL,
    WM,
    WR,
    YR,
    YL,
    VLR,
    YY,
    ZZ,
    ZY,
    YZ,
    ZL,
    LZ,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Dot => "DOT",
            Shape::L => "L",
            Shape::LL => "LL",
            Shape::LLL => "LLL",
            Shape::V => "V",
            Shape::W => "W",
            Shape::VR => "VR",
            Shape::VL => "VL",
            Shape::Y => "Y",
            Shape::VV => "VV",
            Shape::WL => "WL",
            Shape::WM => "WM",
            Shape::WR => "WR",
            Shape::YR => "YR",
            Shape::YL => "YL",
            Shape::VLR => "VLR",
            Shape::YY => "YY",
            Shape::ZZ => "ZZ",
            Shape::ZY => "ZY",
            Shape::YZ => "YZ",
            Shape::ZL => "ZL",
            Shape::LZ => "LZ",
        }
    }

    pub fn matrix(self) -> DimensionMatrix {
        let (upper, lower): (Vec<usize>, Vec<usize>) = match self {
            Shape::Dot => (vec![0], vec![]),
            Shape::L => (vec![1], vec![]),
            Shape::LL => (vec![2], vec![]),
            Shape::LLL => (vec![3], vec![]),
            Shape::V => (vec![1, 1], vec![0]),
            Shape::W => (vec![1, 1, 1], vec![0, 0]),
            Shape::VR => (vec![1, 2], vec![0]),
            Shape::VL => (vec![2, 1], vec![0]),
            Shape::Y => (vec![2, 2], vec![1]),
            Shape::VV => (vec![1, 1, 1, 1], vec![0, 0, 0]),
            Shape::WL => (vec![2, 1, 1], vec![0, 0]),
            Shape::WM => (vec![1, 2, 1], vec![0, 0]),
            Shape::WR => (vec![1, 1, 2], vec![0, 0]),
            Shape::YR => (vec![1, 2, 2], vec![0, 1]),
            Shape::YL => (vec![2, 2, 1], vec![1, 0]),
            Shape::VLR => (vec![2, 2], vec![0]),
            Shape::YY => (vec![2, 2, 2], vec![1, 1]),
            Shape::ZZ => (vec![3, 3], vec![2]),
            Shape::ZY => (vec![3, 2], vec![1]),
            Shape::YZ => (vec![2, 3], vec![1]),
            Shape::ZL => (vec![3, 1], vec![0]),
            Shape::LZ => (vec![1, 3], vec![0]),
        };
        DimensionMatrix { upper, lower }
    }

    pub fn tree(self) -> Tree {
        tree_from_matrix(&self.matrix()).expect("shape matrices are valid")
    }

    pub const DATA: [Shape; 8] =
        [Shape::Dot, Shape::L, Shape::LL, Shape::LLL, Shape::V, Shape::W, Shape::VR, Shape::VL];

    pub const COHERENCES: [Shape; 14] = [
        Shape::Y,
        Shape::VV,
        Shape::WL,
        Shape::WM,
        Shape::WR,
        Shape::YR,
        Shape::YL,
        Shape::VLR,
        Shape::YY,
        Shape::ZZ,
        Shape::ZY,
        Shape::YZ,
        Shape::ZL,
        Shape::LZ,
    ];
}
