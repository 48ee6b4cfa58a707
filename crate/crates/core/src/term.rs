//! Motzkin skeletons and de Bruijn terms.
//!
//! Both are the same tree shape: leaves, unary nodes and binary nodes. A
//! skeleton carries nothing at its leaves, a de Bruijn term carries a variable
//! index. Unary nodes of a term are lambda binders, binary nodes applications.
//!
//! Every traversal in this module runs on an explicit work stack, so trees
//! of several hundred thousand nodes (as produced by the samplers) can be
//! built, compared, printed and dropped without touching call-stack limits.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

use crate::size::SIZE_POLICY;

/// A de Bruijn index.
pub type Index = u32;

/// Something that can sit at the leaves of a [`Tree`].
///
/// The textual form of a leaf is `v` followed by whatever the label writes,
/// so skeleton leaves print as `v` and term variables as `v(3)`.
pub trait Label: Clone + Default + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn write_label(&self, out: &mut String);

    /// Parses the label text following a leaf's `v`, advancing `pos`.
    fn parse_label(input: &[u8], pos: &mut usize) -> Result<Self, TermError>;
}

impl Label for () {
    fn write_label(&self, _out: &mut String) {}

    fn parse_label(_input: &[u8], _pos: &mut usize) -> Result<Self, TermError> {
        Ok(())
    }
}

impl Label for Index {
    fn write_label(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.to_string());
        out.push(')');
    }

    fn parse_label(input: &[u8], pos: &mut usize) -> Result<Self, TermError> {
        expect(input, pos, b'(')?;
        let start = *pos;
        while *pos < input.len() && input[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(TermError::parse(start, "expected a decimal index"));
        }
        let digits = std::str::from_utf8(&input[start..*pos]).expect("ascii digits");
        let index = digits
            .parse()
            .map_err(|_| TermError::parse(start, "index out of range"))?;
        expect(input, pos, b')')?;
        Ok(index)
    }
}

/// A binary-unary tree with labels of type `L` at its leaves.
pub enum Tree<L: Label> {
    Leaf(L),
    Unary(Box<Tree<L>>),
    Binary(Box<Tree<L>>, Box<Tree<L>>),
}

/// A Motzkin tree: the skeleton of a lambda term after erasing its indices.
pub type Skeleton = Tree<()>;

/// A lambda term in de Bruijn form. `Leaf(i)` is the variable with index `i`,
/// `Unary` a lambda binder and `Binary` an application.
pub type Term = Tree<Index>;

/// One node of a tree, seen without its children. A preorder sequence of
/// shapes determines a tree uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape<L> {
    Leaf(L),
    Unary,
    Binary,
}

impl<L: Label> Tree<L> {
    pub fn unary(child: Tree<L>) -> Self {
        Tree::Unary(Box::new(child))
    }

    pub fn binary(left: Tree<L>, right: Tree<L>) -> Self {
        Tree::Binary(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// Preorder walk over node shapes, root first, left subtree before right.
    pub fn preorder(&self) -> Preorder<'_, L> {
        Preorder { stack: vec![self] }
    }

    /// Weighted size: 1 per unary node, 2 per binary node, 0 per leaf.
    pub fn size(&self) -> usize {
        self.preorder()
            .map(|shape| match shape {
                Shape::Leaf(_) => SIZE_POLICY.variable_cost,
                Shape::Unary => SIZE_POLICY.lambda_cost,
                Shape::Binary => SIZE_POLICY.application_cost,
            })
            .sum()
    }

    /// Total number of nodes of any kind.
    pub fn node_count(&self) -> usize {
        self.preorder().count()
    }

    pub fn leaf_count(&self) -> usize {
        self.preorder()
            .filter(|s| matches!(s, Shape::Leaf(_)))
            .count()
    }

    pub fn unary_count(&self) -> usize {
        self.preorder()
            .filter(|s| matches!(s, Shape::Unary))
            .count()
    }

    pub fn binary_count(&self) -> usize {
        self.preorder()
            .filter(|s| matches!(s, Shape::Binary))
            .count()
    }

    /// Leaf labels in left-to-right order.
    pub fn leaves(&self) -> impl Iterator<Item = &L> + '_ {
        self.preorder().filter_map(|s| match s {
            Shape::Leaf(l) => Some(l),
            _ => None,
        })
    }

    /// Rebuilds the tree with every leaf label replaced by `f(label)`.
    pub fn map_leaves<M: Label>(&self, mut f: impl FnMut(&L) -> M) -> Tree<M> {
        let mut builder = Builder::new();
        for shape in self.preorder() {
            builder.push(match shape {
                Shape::Leaf(l) => Shape::Leaf(f(l)),
                Shape::Unary => Shape::Unary,
                Shape::Binary => Shape::Binary,
            });
        }
        builder.finish().expect("preorder of a tree is complete")
    }

    /// Rebuilds a tree from its preorder shapes. Returns `None` unless the
    /// sequence describes exactly one complete tree.
    pub fn from_preorder(shapes: impl IntoIterator<Item = Shape<L>>) -> Option<Self> {
        let mut builder = Builder::new();
        for shape in shapes {
            if builder.is_complete() {
                return None;
            }
            builder.push(shape);
        }
        builder.finish()
    }
}

impl Skeleton {
    pub fn leaf() -> Self {
        Tree::Leaf(())
    }

    /// True iff some closed term has this skeleton: every root-to-leaf path
    /// crosses at least one unary node.
    pub fn is_closable(&self) -> bool {
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                Tree::Leaf(()) => return false,
                // everything below a binder can be closed
                Tree::Unary(_) => {}
                Tree::Binary(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        true
    }

    /// True iff exactly one unary node lies on every root-to-leaf path, which
    /// is exactly when the skeleton hosts a single closed term.
    pub fn is_uniquely_closable(&self) -> bool {
        let mut stack = vec![(self, false)];
        while let Some((node, bound)) = stack.pop() {
            match node {
                Tree::Leaf(()) => {
                    if !bound {
                        return false;
                    }
                }
                Tree::Unary(c) => {
                    if bound {
                        return false;
                    }
                    stack.push((c, true));
                }
                Tree::Binary(l, r) => {
                    stack.push((r, bound));
                    stack.push((l, bound));
                }
            }
        }
        true
    }

    /// The unique closed term hosted by a uniquely closable skeleton. Every
    /// leaf sits under exactly one binder, so every index is 0.
    pub fn close_unique(&self) -> Result<Term, TermError> {
        if !self.is_uniquely_closable() {
            return Err(TermError::NotUniquelyClosable(self.to_string()));
        }
        Ok(self.map_leaves(|_| 0))
    }
}

impl Term {
    pub fn var(index: Index) -> Self {
        Tree::Leaf(index)
    }

    pub fn lam(body: Term) -> Self {
        Tree::unary(body)
    }

    pub fn app(fun: Term, arg: Term) -> Self {
        Tree::binary(fun, arg)
    }

    /// True iff every variable `i` sits below more than `i` binders.
    pub fn is_closed(&self) -> bool {
        let mut stack = vec![(self, 0usize)];
        while let Some((node, depth)) = stack.pop() {
            match node {
                Tree::Leaf(i) => {
                    if (*i as usize) >= depth {
                        return false;
                    }
                }
                Tree::Unary(b) => stack.push((b, depth + 1)),
                Tree::Binary(f, a) => {
                    stack.push((a, depth));
                    stack.push((f, depth));
                }
            }
        }
        true
    }

    /// Erases the variable indices.
    pub fn to_skeleton(&self) -> Skeleton {
        self.map_leaves(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("skeleton {0} is not uniquely closable")]
    NotUniquelyClosable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: &'static str },
}

impl TermError {
    fn parse(pos: usize, msg: &'static str) -> Self {
        TermError::Parse { pos, msg }
    }
}

pub struct Preorder<'a, L: Label> {
    stack: Vec<&'a Tree<L>>,
}

impl<'a, L: Label> Iterator for Preorder<'a, L> {
    type Item = Shape<&'a L>;

    fn next(&mut self) -> Option<Self::Item> {
        let node = self.stack.pop()?;
        Some(match node {
            Tree::Leaf(l) => Shape::Leaf(l),
            Tree::Unary(c) => {
                self.stack.push(c);
                Shape::Unary
            }
            Tree::Binary(l, r) => {
                self.stack.push(r);
                self.stack.push(l);
                Shape::Binary
            }
        })
    }
}

enum Frame<L: Label> {
    Unary,
    BinaryLeft,
    BinaryRight(Box<Tree<L>>),
}

/// Assembles a tree from shapes fed in preorder.
pub(crate) struct Builder<L: Label> {
    frames: Vec<Frame<L>>,
    done: Option<Tree<L>>,
}

impl<L: Label> Builder<L> {
    pub(crate) fn new() -> Self {
        Builder {
            frames: Vec::new(),
            done: None,
        }
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.done.is_some()
    }

    pub(crate) fn push(&mut self, shape: Shape<L>) {
        debug_assert!(self.done.is_none(), "builder already holds a tree");
        match shape {
            Shape::Leaf(l) => self.complete(Tree::Leaf(l)),
            Shape::Unary => self.frames.push(Frame::Unary),
            Shape::Binary => self.frames.push(Frame::BinaryLeft),
        }
    }

    fn complete(&mut self, mut tree: Tree<L>) {
        loop {
            match self.frames.pop() {
                None => {
                    self.done = Some(tree);
                    return;
                }
                Some(Frame::Unary) => tree = Tree::unary(tree),
                Some(Frame::BinaryLeft) => {
                    self.frames.push(Frame::BinaryRight(Box::new(tree)));
                    return;
                }
                Some(Frame::BinaryRight(left)) => tree = Tree::Binary(left, Box::new(tree)),
            }
        }
    }

    pub(crate) fn finish(self) -> Option<Tree<L>> {
        self.done
    }
}

impl<L: Label> Drop for Tree<L> {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        detach(self, &mut pending);
        while let Some(mut node) = pending.pop() {
            detach(&mut node, &mut pending);
        }
    }
}

/// Moves the children of `node` onto `out`, leaving leaves in their boxes so
/// that dropping `node` afterwards does not recurse.
fn detach<L: Label>(node: &mut Tree<L>, out: &mut Vec<Tree<L>>) {
    match node {
        Tree::Leaf(_) => {}
        Tree::Unary(c) => out.push(std::mem::take(&mut **c)),
        Tree::Binary(l, r) => {
            out.push(std::mem::take(&mut **l));
            out.push(std::mem::take(&mut **r));
        }
    }
}

impl<L: Label> Default for Tree<L> {
    fn default() -> Self {
        Tree::Leaf(L::default())
    }
}

impl<L: Label> Clone for Tree<L> {
    fn clone(&self) -> Self {
        Tree::from_preorder(self.preorder().map(|s| match s {
            Shape::Leaf(l) => Shape::Leaf(l.clone()),
            Shape::Unary => Shape::Unary,
            Shape::Binary => Shape::Binary,
        }))
        .expect("preorder of a tree is complete")
    }
}

impl<L: Label> PartialEq for Tree<L> {
    fn eq(&self, other: &Self) -> bool {
        self.preorder().eq(other.preorder())
    }
}

impl<L: Label> Eq for Tree<L> {}

impl<L: Label> Hash for Tree<L> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for shape in self.preorder() {
            shape.hash(state);
        }
    }
}

impl<L: Label> fmt::Display for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step<'a, L: Label> {
            Visit(&'a Tree<L>),
            Text(&'static str),
        }
        let mut out = String::new();
        let mut stack = vec![Step::Visit(self)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(t) => out.push_str(t),
                Step::Visit(Tree::Leaf(l)) => {
                    out.push('v');
                    l.write_label(&mut out);
                }
                Step::Visit(Tree::Unary(c)) => {
                    out.push_str("l(");
                    stack.push(Step::Text(")"));
                    stack.push(Step::Visit(c));
                }
                Step::Visit(Tree::Binary(l, r)) => {
                    out.push_str("a(");
                    stack.push(Step::Text(")"));
                    stack.push(Step::Visit(r));
                    stack.push(Step::Text(","));
                    stack.push(Step::Visit(l));
                }
            }
        }
        f.write_str(&out)
    }
}

impl<L: Label> fmt::Debug for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn expect(input: &[u8], pos: &mut usize, byte: u8) -> Result<(), TermError> {
    if input.get(*pos) == Some(&byte) {
        *pos += 1;
        Ok(())
    } else {
        Err(TermError::parse(
            *pos,
            match byte {
                b'(' => "expected '('",
                b')' => "expected ')'",
                _ => "expected ','",
            },
        ))
    }
}

/// Parses the canonical syntax `v`, `l(X)`, `a(X,Y)` (with `v(I)` leaves for
/// terms). No whitespace is accepted anywhere.
fn parse_tree<L: Label>(text: &str) -> Result<Tree<L>, TermError> {
    let input = text.as_bytes();
    let mut pos = 0;
    let mut builder = Builder::new();
    // closing punctuation still owed by the open constructors, innermost last
    let mut owed: Vec<u8> = Vec::new();
    loop {
        match input.get(pos) {
            Some(b'v') => {
                pos += 1;
                let label = L::parse_label(input, &mut pos)?;
                builder.push(Shape::Leaf(label));
                // a finished subtree settles owed punctuation until a comma
                // opens the right branch of some application
                loop {
                    match owed.pop() {
                        None => {
                            if pos != input.len() {
                                return Err(TermError::parse(pos, "trailing input"));
                            }
                            return Ok(builder.finish().expect("balanced input"));
                        }
                        Some(b) => {
                            expect(input, &mut pos, b)?;
                            if b == b',' {
                                break;
                            }
                        }
                    }
                }
            }
            Some(b'l') => {
                pos += 1;
                expect(input, &mut pos, b'(')?;
                builder.push(Shape::Unary);
                owed.push(b')');
            }
            Some(b'a') => {
                pos += 1;
                expect(input, &mut pos, b'(')?;
                builder.push(Shape::Binary);
                owed.push(b')');
                owed.push(b',');
            }
            _ => return Err(TermError::parse(pos, "expected 'v', 'l' or 'a'")),
        }
    }
}

impl<L: Label> FromStr for Tree<L> {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}
