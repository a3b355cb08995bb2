use std::fmt;

use super::{Letter, PlanarForest, PlanarTree};
use crate::algebra::Graded;
use crate::Result;

/// Decorated rooted tree up to isomorphism; children kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonplanarTree {
    root: Letter,
    children: Vec<NonplanarTree>,
}

/// Multiset of [`NonplanarTree`]s, kept sorted so equality is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NonplanarForest {
    trees: Vec<NonplanarTree>,
}

impl NonplanarTree {
    pub fn new(root: Letter, mut children: Vec<NonplanarTree>) -> Self {
        children.sort();
        Self { root, children }
    }

    pub fn root(&self) -> &Letter {
        &self.root
    }

    pub fn children(&self) -> &[NonplanarTree] {
        &self.children
    }

    pub fn degree(&self) -> usize {
        1 + self.children.iter().map(NonplanarTree::degree).sum::<usize>()
    }

    /// The planar tree listing children in canonical order.
    pub fn to_planar(&self) -> PlanarTree {
        PlanarTree::new(
            self.root.clone(),
            self.children.iter().map(NonplanarTree::to_planar).collect(),
        )
    }

    fn from_planar(t: &PlanarTree) -> Self {
        Self::new(
            t.root().clone(),
            t.children().iter().map(Self::from_planar).collect(),
        )
    }
}

impl NonplanarForest {
    pub fn new(mut trees: Vec<NonplanarTree>) -> Self {
        trees.sort();
        Self { trees }
    }

    pub fn unit() -> Self {
        Self::default()
    }

    pub fn trees(&self) -> &[NonplanarTree] {
        &self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    /// Commutative product: multiset union.
    pub fn union(&self, other: &NonplanarForest) -> NonplanarForest {
        let mut t = self.trees.clone();
        t.extend(other.trees.iter().cloned());
        Self::new(t)
    }

    /// The canonical planar representative.
    pub fn to_planar(&self) -> PlanarForest {
        PlanarForest::new(self.trees.iter().map(NonplanarTree::to_planar).collect())
    }

    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        Ok(forget_planarity(&PlanarForest::parse(text, alphabet)?))
    }
}

impl Graded for NonplanarForest {
    fn degree(&self) -> usize {
        self.trees.iter().map(NonplanarTree::degree).sum()
    }
}

/// Forgets the planar embedding.
pub fn forget_planarity(f: &PlanarForest) -> NonplanarForest {
    NonplanarForest::new(f.trees().iter().map(NonplanarTree::from_planar).collect())
}

impl fmt::Display for NonplanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_planar(), f)
    }
}

impl fmt::Debug for NonplanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for NonplanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_planar(), f)
    }
}

impl fmt::Debug for NonplanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
