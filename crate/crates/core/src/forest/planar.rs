use std::fmt;

use super::Letter;
use crate::algebra::Graded;
use crate::{Error, Result};

/// Decorated planar rooted tree; children are listed left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarTree {
    root: Letter,
    children: Vec<PlanarTree>,
}

/// Ordered sequence of planar trees; the empty forest is the unit `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlanarForest {
    trees: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn new(root: Letter, children: Vec<PlanarTree>) -> Self {
        Self { root, children }
    }

    pub fn leaf(root: Letter) -> Self {
        Self::new(root, Vec::new())
    }

    pub fn root(&self) -> &Letter {
        &self.root
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    /// Forest of the root's children.
    pub fn branches(&self) -> PlanarForest {
        PlanarForest::new(self.children.clone())
    }

    pub fn degree(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::degree).sum::<usize>()
    }

    pub fn into_forest(self) -> PlanarForest {
        PlanarForest::new(vec![self])
    }

    /// Letters in left-to-right preorder.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        out.push(self.root.clone());
        for c in &self.children {
            c.collect_letters(out);
        }
    }
}

/// Grafts the trees of `f` onto a new root `a`.
pub fn b_plus(a: Letter, f: PlanarForest) -> PlanarTree {
    PlanarTree::new(a, f.trees)
}

/// Splits `τ = τ' ×_a τ''`: all trees but the last, the last root, and the
/// branches of the last tree.
pub fn decompose(f: &PlanarForest) -> Result<(PlanarForest, Letter, PlanarForest)> {
    let (last, rest) = f.trees.split_last().ok_or(Error::EmptyForest)?;
    Ok((
        PlanarForest::new(rest.to_vec()),
        last.root.clone(),
        last.branches(),
    ))
}

impl PlanarForest {
    pub fn new(trees: Vec<PlanarTree>) -> Self {
        Self { trees }
    }

    pub fn unit() -> Self {
        Self::default()
    }

    pub fn single(letter: Letter) -> Self {
        PlanarTree::leaf(letter).into_forest()
    }

    pub fn trees(&self) -> &[PlanarTree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<PlanarTree> {
        self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn num_trees(&self) -> usize {
        self.trees.len()
    }

    /// Concatenation `f g`.
    pub fn concat(&self, other: &PlanarForest) -> PlanarForest {
        let mut t = self.trees.clone();
        t.extend(other.trees.iter().cloned());
        Self::new(t)
    }

    pub fn push(&mut self, tree: PlanarTree) {
        self.trees.push(tree);
    }

    /// Letters in left-to-right preorder.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.degree());
        for t in &self.trees {
            t.collect_letters(&mut out);
        }
        out
    }

    /// Parses the text grammar: trees `a` or `a[t,t,…]` separated by
    /// whitespace; `1` or the empty string is the unit forest.
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            alphabet,
        }
        .forest()
    }
}

impl Graded for PlanarForest {
    fn degree(&self) -> usize {
        self.trees.iter().map(PlanarTree::degree).sum()
    }
}

/// Free-function form of [`PlanarForest::parse`].
pub fn parse_forest(text: &str, alphabet: usize) -> Result<PlanarForest> {
    PlanarForest::parse(text, alphabet)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn forest(mut self) -> Result<PlanarForest> {
        self.skip_ws();
        if self.peek() == Some(b'1') {
            self.pos += 1;
            self.skip_ws();
            if self.pos != self.src.len() {
                return Err(self.err("unexpected input after unit forest"));
            }
            return Ok(PlanarForest::unit());
        }
        let mut trees = Vec::new();
        while self.pos < self.src.len() {
            trees.push(self.tree()?);
            let before = self.pos;
            self.skip_ws();
            if self.pos < self.src.len() && self.pos == before {
                return Err(self.err("trees must be separated by whitespace"));
            }
        }
        Ok(PlanarForest::new(trees))
    }

    fn tree(&mut self) -> Result<PlanarTree> {
        let c = self.peek().ok_or_else(|| self.err("expected a letter"))?;
        if !c.is_ascii_lowercase() {
            return Err(self.err(format!("expected a letter, found {:?}", c as char)));
        }
        let root = Letter::from_char(c as char, self.alphabet)?;
        self.pos += 1;
        let mut children = Vec::new();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            loop {
                self.skip_ws();
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ']'")),
                }
            }
        }
        Ok(PlanarTree::new(root, children))
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)?;
        if !self.children.is_empty() {
            write!(f, "[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Display for PlanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for PlanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
