//! Simple types, unification with occurs check, and typability of skeletons.

mod bijection;
mod constraints;
mod store;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use bijection::{from_binary_tree, to_binary_tree, BijectionError, BinaryTree};
pub use constraints::{
    build_constraints, count_solutions_upto, infer_type, is_typable_skel, is_uniquely_typable_skel,
    is_untypable_closable_skel, skel_type, solve_upto, typable_closed_terms,
    uniquely_closable_typable, Constraint, ConstraintSet, Solution, TypeRef,
};

use store::Store;

/// A simple type: a type variable or an arrow between two types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Var(u32),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> Self {
        SimpleType::Arrow(Box::new(domain), Box::new(codomain))
    }

    pub fn contains_var(&self, var: u32) -> bool {
        match self {
            SimpleType::Var(v) => *v == var,
            SimpleType::Arrow(a, b) => a.contains_var(var) || b.contains_var(var),
        }
    }

    /// Variables in order of first occurrence, left to right.
    pub fn vars(&self) -> Vec<u32> {
        fn walk(t: &SimpleType, out: &mut Vec<u32>) {
            match t {
                SimpleType::Var(v) => {
                    if !out.contains(v) {
                        out.push(*v);
                    }
                }
                SimpleType::Arrow(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Renames variables to 0, 1, 2, ... by first occurrence.
    pub fn canonical(&self) -> SimpleType {
        let renaming: HashMap<u32, u32> = self
            .vars()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        self.rename(&renaming)
    }

    fn rename(&self, renaming: &HashMap<u32, u32>) -> SimpleType {
        match self {
            SimpleType::Var(v) => SimpleType::Var(renaming[v]),
            SimpleType::Arrow(a, b) => SimpleType::arrow(a.rename(renaming), b.rename(renaming)),
        }
    }
}

/// Variables print as decimal ids; every arrow is wrapped in parentheses,
/// so `a -> a` prints as `(0->0)` and `(a -> a) -> b` as `((0->0)->1)`.
impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Var(v) => write!(f, "{v}"),
            SimpleType::Arrow(a, b) => write!(f, "({a}->{b})"),
        }
    }
}

impl FromStr for SimpleType {
    type Err = TypeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn parse(input: &[u8], pos: &mut usize) -> Result<SimpleType, TypeParseError> {
            match input.get(*pos) {
                Some(b'(') => {
                    *pos += 1;
                    let dom = parse(input, pos)?;
                    if input.get(*pos..*pos + 2) != Some(b"->") {
                        return Err(TypeParseError(*pos));
                    }
                    *pos += 2;
                    let cod = parse(input, pos)?;
                    if input.get(*pos) != Some(&b')') {
                        return Err(TypeParseError(*pos));
                    }
                    *pos += 1;
                    Ok(SimpleType::arrow(dom, cod))
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = *pos;
                    while input.get(*pos).is_some_and(u8::is_ascii_digit) {
                        *pos += 1;
                    }
                    std::str::from_utf8(&input[start..*pos])
                        .expect("ascii")
                        .parse()
                        .map(SimpleType::Var)
                        .map_err(|_| TypeParseError(start))
                }
                _ => Err(TypeParseError(*pos)),
            }
        }
        let mut pos = 0;
        let t = parse(s.as_bytes(), &mut pos)?;
        if pos != s.len() {
            return Err(TypeParseError(pos));
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed type at byte {0}")]
pub struct TypeParseError(pub usize);

/// Unification failure. Simple types have no constants, so two types can
/// only fail to unify through the occurs check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("occurs check: variable {var} occurs in {ty}")]
    Occurs { var: u32, ty: SimpleType },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("term {0} is not closed")]
    Open(String),
    #[error("term {0} has no simple type")]
    Untypable(String),
    #[error("skeleton {0} is not uniquely closable")]
    NotUniquelyClosable(String),
}

/// An idempotent substitution from type variables to types.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<u32, SimpleType>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a substitution from bindings, failing unless it is idempotent
    /// (no bound variable appears in any bound type).
    pub fn from_bindings(bindings: impl IntoIterator<Item = (u32, SimpleType)>) -> Option<Self> {
        let map: BTreeMap<u32, SimpleType> = bindings.into_iter().collect();
        let idempotent = map
            .values()
            .all(|t| map.keys().all(|v| !t.contains_var(*v)));
        idempotent.then_some(Substitution(map))
    }

    pub fn get(&self, var: u32) -> Option<&SimpleType> {
        self.0.get(&var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &SimpleType)> {
        self.0.iter().map(|(v, t)| (*v, t))
    }

    pub fn apply(&self, t: &SimpleType) -> SimpleType {
        match t {
            SimpleType::Var(v) => self.0.get(v).cloned().unwrap_or(SimpleType::Var(*v)),
            SimpleType::Arrow(a, b) => SimpleType::arrow(self.apply(a), self.apply(b)),
        }
    }
}

/// Most general unifier of `a` and `b` extending `subst`.
pub fn unify(
    a: &SimpleType,
    b: &SimpleType,
    subst: &Substitution,
) -> Result<Substitution, UnifyError> {
    let mut store = Store::new();
    let mut refs: HashMap<u32, store::TypeRef> = HashMap::new();
    let mut load = |store: &mut Store, t: &SimpleType| store.load(t, &mut refs);
    let mut pending = Vec::new();
    for (v, t) in subst.iter() {
        let var = load(&mut store, &SimpleType::Var(v));
        let ty = load(&mut store, t);
        pending.push((var, ty));
    }
    let left = load(&mut store, a);
    let right = load(&mut store, b);
    pending.push((left, right));

    let ids: HashMap<store::TypeRef, u32> = refs.iter().map(|(v, r)| (*r, *v)).collect();
    let name = |store: &Store, r: store::TypeRef| store.extract(r, |u| ids[&u]);
    for (x, y) in pending {
        if let Err(store::OccursFailure { var, ty }) = store.unify(x, y) {
            return Err(UnifyError::Occurs {
                var: ids[&var],
                ty: name(&store, ty),
            });
        }
    }
    let mut bindings = BTreeMap::new();
    for (v, r) in &refs {
        if store.resolve(*r) != *r {
            bindings.insert(*v, name(&store, *r));
        }
    }
    Ok(Substitution(bindings))
}
