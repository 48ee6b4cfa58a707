//! Type equations generated from a skeleton, and their bounded solution.
//!
//! Walking a skeleton from the root, every binder pushes a fresh type
//! variable onto an environment and every leaf must take the type of one of
//! the environment entries. Solving the equations with every choice explored
//! yields exactly the simply-typed closed terms with that skeleton: the
//! environment position chosen at each leaf is its de Bruijn index.

use super::store::Store;
pub use super::store::TypeRef;
use super::{SimpleType, TypeError};
use crate::enumerate::{self, Stream};
use crate::term::{Skeleton, Term, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// Two types must be equal.
    Unify(TypeRef, TypeRef),
    /// A leaf's type must equal one of the environment entries, innermost
    /// binder first. This is the only source of choice.
    Elem { leaf: TypeRef, env: Vec<TypeRef> },
}

/// The type equations of one skeleton.
#[derive(Debug, Clone)]
pub struct ConstraintSet {
    skeleton: Skeleton,
    store: Store,
    root: TypeRef,
    constraints: Vec<Constraint>,
    open_leaves: usize,
}

impl ConstraintSet {
    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Type variable standing for the whole term.
    pub fn root(&self) -> TypeRef {
        self.root
    }

    /// Leaves with no binder above them. Such a skeleton hosts no closed term,
    /// so no `Elem` constraint is emitted for them and the set has no solution.
    pub fn open_leaves(&self) -> usize {
        self.open_leaves
    }

    pub fn elem_count(&self) -> usize {
        self.constraints
            .iter()
            .filter(|c| matches!(c, Constraint::Elem { .. }))
            .count()
    }

    /// The type a reference denotes before any constraint is solved.
    pub fn describe(&self, t: TypeRef) -> SimpleType {
        self.store.extract(t, |r| r.index() as u32)
    }
}

/// Generates the type equations for `skeleton`.
pub fn build_constraints(skeleton: &Skeleton) -> ConstraintSet {
    let mut store = Store::new();
    let mut constraints = Vec::new();
    let mut open_leaves = 0;
    // environments form a tree of cons cells shared between siblings
    let mut cells: Vec<(TypeRef, Option<usize>)> = Vec::new();
    let root = store.fresh();
    let mut stack = vec![(skeleton, root, None::<usize>)];
    while let Some((node, ty, env)) = stack.pop() {
        match node {
            Tree::Leaf(()) => {
                let mut entries = Vec::new();
                let mut cell = env;
                while let Some(i) = cell {
                    entries.push(cells[i].0);
                    cell = cells[i].1;
                }
                if entries.is_empty() {
                    open_leaves += 1;
                } else {
                    constraints.push(Constraint::Elem {
                        leaf: ty,
                        env: entries,
                    });
                }
            }
            Tree::Unary(body) => {
                let param = store.fresh();
                let result = store.fresh();
                let arrow = store.arrow(param, result);
                constraints.push(Constraint::Unify(ty, arrow));
                cells.push((param, env));
                stack.push((body, result, Some(cells.len() - 1)));
            }
            Tree::Binary(fun, arg) => {
                let arg_ty = store.fresh();
                let fun_ty = store.fresh();
                let arrow = store.arrow(arg_ty, ty);
                constraints.push(Constraint::Unify(fun_ty, arrow));
                stack.push((arg, arg_ty, env));
                stack.push((fun, fun_ty, env));
            }
        }
    }
    ConstraintSet {
        skeleton: skeleton.clone(),
        store,
        root,
        constraints,
        open_leaves,
    }
}

/// A simply-typed closed term hosted by a skeleton, with its principal type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub term: Term,
    pub ty: SimpleType,
}

/// Explores the `Elem` choices depth first, leaves left to right and indices
/// ascending, calling `found` with the store and the chosen indices at every
/// solution until it returns `false`.
fn search(set: &ConstraintSet, mut found: impl FnMut(&Store, &[u32]) -> bool) {
    if set.open_leaves > 0 {
        return;
    }
    let mut store = set.store.clone();
    let mut elems = Vec::new();
    for c in &set.constraints {
        match c {
            Constraint::Unify(a, b) => {
                if store.unify(*a, *b).is_err() {
                    return;
                }
            }
            Constraint::Elem { leaf, env } => elems.push((*leaf, env.as_slice())),
        }
    }

    let mut chosen: Vec<u32> = Vec::with_capacity(elems.len());
    let mut marks: Vec<usize> = Vec::with_capacity(elems.len());
    let mut next = 0usize;
    loop {
        let depth = chosen.len();
        if depth == elems.len() {
            if !found(&store, &chosen) {
                return;
            }
        } else {
            let (leaf, env) = elems[depth];
            let mut advanced = false;
            while next < env.len() {
                let mark = store.mark();
                if store.unify(leaf, env[next]).is_ok() {
                    chosen.push(next as u32);
                    marks.push(mark);
                    next = 0;
                    advanced = true;
                    break;
                }
                store.undo(mark);
                next += 1;
            }
            if advanced {
                continue;
            }
        }
        // backtrack to the previous leaf and try its next index
        match (chosen.pop(), marks.pop()) {
            (Some(index), Some(mark)) => {
                store.undo(mark);
                next = index as usize + 1;
            }
            _ => return,
        }
    }
}

/// The first `limit` solutions in canonical choice order; all of them when
/// fewer exist.
pub fn solve_upto(set: &ConstraintSet, limit: usize) -> Vec<Solution> {
    assert!(limit >= 1, "solution limit must be positive");
    let mut out = Vec::new();
    search(set, |store, chosen| {
        let mut indices = chosen.iter().copied();
        let term = set
            .skeleton
            .map_leaves(|()| indices.next().expect("one index per leaf"));
        out.push(Solution {
            term,
            ty: store.extract_canonical(set.root),
        });
        out.len() < limit
    });
    out
}

/// Number of solutions, stopping once `limit` are found.
pub fn count_solutions_upto(set: &ConstraintSet, limit: usize) -> usize {
    let mut count = 0;
    search(set, |_, _| {
        count += 1;
        count < limit
    });
    count
}

/// True iff at least one simply-typed closed term has this skeleton.
pub fn is_typable_skel(skeleton: &Skeleton) -> bool {
    count_solutions_upto(&build_constraints(skeleton), 1) >= 1
}

/// True iff the skeleton is closable but hosts no simply-typed closed term.
pub fn is_untypable_closable_skel(skeleton: &Skeleton) -> bool {
    skeleton.is_closable() && count_solutions_upto(&build_constraints(skeleton), 1) == 0
}

/// True iff exactly one simply-typed closed term has this skeleton.
pub fn is_uniquely_typable_skel(skeleton: &Skeleton) -> bool {
    count_solutions_upto(&build_constraints(skeleton), 2) == 1
}

/// Principal type of a closed term.
pub fn infer_type(term: &Term) -> Result<SimpleType, TypeError> {
    if !term.is_closed() {
        return Err(TypeError::Open(term.to_string()));
    }
    let set = build_constraints(&term.to_skeleton());
    let mut store = set.store.clone();
    let mut indices = term.leaves();
    let untypable = || TypeError::Untypable(term.to_string());
    for c in &set.constraints {
        let ok = match c {
            Constraint::Unify(a, b) => store.unify(*a, *b).is_ok(),
            Constraint::Elem { leaf, env } => {
                let i = *indices.next().expect("one index per leaf") as usize;
                store.unify(*leaf, env[i]).is_ok()
            }
        };
        if !ok {
            return Err(untypable());
        }
    }
    Ok(store.extract_canonical(set.root))
}

/// Type of the unique closed term of a uniquely closable skeleton. Every
/// leaf has exactly one binder in scope, so no choice is ever made.
pub fn skel_type(skeleton: &Skeleton) -> Result<SimpleType, TypeError> {
    if !skeleton.is_uniquely_closable() {
        return Err(TypeError::NotUniquelyClosable(skeleton.to_string()));
    }
    let untypable = || TypeError::Untypable(skeleton.to_string());
    let mut store = Store::new();
    let root = store.fresh();
    let mut stack = vec![(skeleton, root, None)];
    while let Some((node, ty, binder)) = stack.pop() {
        match node {
            Tree::Leaf(()) => {
                let binder = binder.expect("uniquely closable leaves have a binder");
                store.unify(ty, binder).map_err(|_| untypable())?;
            }
            Tree::Unary(body) => {
                let param = store.fresh();
                let result = store.fresh();
                let arrow = store.arrow(param, result);
                store.unify(ty, arrow).map_err(|_| untypable())?;
                stack.push((body, result, Some(param)));
            }
            Tree::Binary(fun, arg) => {
                let arg_ty = store.fresh();
                let fun_ty = store.arrow(arg_ty, ty);
                stack.push((arg, arg_ty, binder));
                stack.push((fun, fun_ty, binder));
            }
        }
    }
    Ok(store.extract_canonical(root))
}

/// Uniquely closable skeletons of size `n` whose unique term is typable.
pub fn uniquely_closable_typable(n: usize) -> Stream<Skeleton> {
    Box::new(enumerate::uniquely_closable(n).filter(|s| skel_type(s).is_ok()))
}

/// Every simply-typed closed term of size `n`, grouped by skeleton in
/// canonical skeleton order.
pub fn typable_closed_terms(n: usize) -> Stream<Term> {
    Box::new(enumerate::closable(n).flat_map(|s| {
        solve_upto(&build_constraints(&s), usize::MAX)
            .into_iter()
            .map(|sol| sol.term)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skel(s: &str) -> Skeleton {
        s.parse().unwrap()
    }

    fn term(s: &str) -> Term {
        s.parse().unwrap()
    }

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn inference_examples() {
        assert_eq!(infer_type(&term("l(v(0))")).unwrap(), ty("(0->0)"));
        assert!(matches!(
            infer_type(&term("l(a(v(0),v(0)))")),
            Err(TypeError::Untypable(_))
        ));
        assert_eq!(infer_type(&term("l(l(v(1)))")).unwrap(), ty("(0->(1->0))"));
        assert!(matches!(
            infer_type(&term("l(v(1))")),
            Err(TypeError::Open(_))
        ));
        // S combinator
        assert_eq!(
            infer_type(&term("l(l(l(a(a(v(2),v(0)),a(v(1),v(0))))))")).unwrap(),
            ty("((0->(1->2))->((0->1)->(0->2)))")
        );
    }

    #[test]
    fn constraint_shapes() {
        let set = build_constraints(&skel("l(v)"));
        assert_eq!(set.elem_count(), 1);
        assert!(set
            .constraints()
            .iter()
            .any(|c| matches!(c, Constraint::Elem { env, .. } if env.len() == 1)));
        assert_eq!(solve_upto(&set, 2).len(), 1);

        let omega = build_constraints(&skel("l(a(v,v))"));
        assert_eq!(omega.elem_count(), 2);
        assert!(solve_upto(&omega, 2).is_empty());

        let open = build_constraints(&skel("a(v,l(v))"));
        assert_eq!(open.open_leaves(), 1);
        assert!(solve_upto(&open, 5).is_empty());
    }

    #[test]
    fn bounded_search() {
        let sols = solve_upto(&build_constraints(&skel("l(l(v))")), 3);
        let terms: Vec<String> = sols.iter().map(|s| s.term.to_string()).collect();
        assert_eq!(terms, ["l(l(v(0)))", "l(l(v(1)))"]);
        assert_eq!(sols[0].ty, ty("(0->(1->1))"));
        assert_eq!(sols[1].ty, ty("(0->(1->0))"));

        let set = build_constraints(&skel("l(l(l(v)))"));
        assert_eq!(solve_upto(&set, 2).len(), 2);
        assert_eq!(count_solutions_upto(&set, usize::MAX), 3);
    }

    #[test]
    fn skeleton_predicates() {
        assert!(is_typable_skel(&skel("l(v)")));
        assert!(!is_typable_skel(&skel("l(a(v,v))")));
        assert!(is_untypable_closable_skel(&skel("l(a(v,v))")));
        assert!(!is_untypable_closable_skel(&skel("a(v,v)")));
        assert!(is_uniquely_typable_skel(&skel("a(l(v),l(v))")));
        assert!(!is_uniquely_typable_skel(&skel("l(l(v))")));
    }

    #[test]
    fn skel_type_examples() {
        assert_eq!(skel_type(&skel("l(v)")).unwrap(), ty("(0->0)"));
        assert_eq!(skel_type(&skel("a(l(v),l(v))")).unwrap(), ty("(0->0)"));
        assert!(matches!(
            skel_type(&skel("l(a(v,v))")),
            Err(TypeError::Untypable(_))
        ));
        assert!(matches!(
            skel_type(&skel("l(l(v))")),
            Err(TypeError::NotUniquelyClosable(_))
        ));
    }

    #[test]
    fn uniquely_closable_typable_counts() {
        let counts: Vec<usize> = (0..=13)
            .map(|n| uniquely_closable_typable(n).count())
            .collect();
        assert_eq!(counts, [0, 1, 0, 0, 1, 0, 0, 2, 0, 0, 5, 0, 0, 14]);
    }
}
