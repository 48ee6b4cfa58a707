//! Brute-force cross-checks against independent reimplementations.

use std::collections::{HashMap, HashSet};

use lambda_skeletons::enumerate::{closed_terms, motzkin, uniquely_closable};
use lambda_skeletons::typecheck::{
    build_constraints, infer_type, is_typable_skel, is_uniquely_typable_skel, solve_upto,
    typable_closed_terms,
};
use lambda_skeletons::{Skeleton, Term, Tree};

/// Textbook substitution-based inference, kept deliberately naive.
mod naive {
    use super::*;

    #[derive(Clone, Debug)]
    pub enum Ty {
        V(usize),
        F(Box<Ty>, Box<Ty>),
    }

    pub struct Infer {
        subst: HashMap<usize, Ty>,
        next: usize,
    }

    impl Infer {
        fn fresh(&mut self) -> Ty {
            self.next += 1;
            Ty::V(self.next - 1)
        }

        fn walk(&self, t: &Ty) -> Ty {
            match t {
                Ty::V(v) => match self.subst.get(v) {
                    Some(u) => self.walk(u),
                    None => t.clone(),
                },
                Ty::F(a, b) => Ty::F(Box::new(self.walk(a)), Box::new(self.walk(b))),
            }
        }

        fn occurs(&self, v: usize, t: &Ty) -> bool {
            match self.walk(t) {
                Ty::V(u) => u == v,
                Ty::F(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
            }
        }

        fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
            match (self.walk(a), self.walk(b)) {
                (Ty::V(x), Ty::V(y)) if x == y => true,
                (Ty::V(x), t) | (t, Ty::V(x)) => {
                    if self.occurs(x, &t) {
                        return false;
                    }
                    self.subst.insert(x, t);
                    true
                }
                (Ty::F(a1, b1), Ty::F(a2, b2)) => self.unify(&a1, &a2) && self.unify(&b1, &b2),
            }
        }

        fn infer(&mut self, t: &Term, env: &mut Vec<Ty>) -> Option<Ty> {
            match t {
                Tree::Leaf(i) => Some(env[env.len() - 1 - *i as usize].clone()),
                Tree::Unary(body) => {
                    let a = self.fresh();
                    env.push(a.clone());
                    let b = self.infer(body, env);
                    env.pop();
                    Some(Ty::F(Box::new(a), Box::new(b?)))
                }
                Tree::Binary(f, x) => {
                    let tf = self.infer(f, env)?;
                    let tx = self.infer(x, env)?;
                    let r = self.fresh();
                    self.unify(&tf, &Ty::F(Box::new(tx), Box::new(r.clone())))
                        .then_some(r)
                }
            }
        }
    }

    fn show(t: &Ty, names: &mut HashMap<usize, usize>, out: &mut String) {
        match t {
            Ty::V(v) => {
                let n = names.len();
                let id = *names.entry(*v).or_insert(n);
                out.push_str(&id.to_string());
            }
            Ty::F(a, b) => {
                out.push('(');
                show(a, names, out);
                out.push_str("->");
                show(b, names, out);
                out.push(')');
            }
        }
    }

    /// Principal type of a closed term, printed with canonical names.
    pub fn type_of(t: &Term) -> Option<String> {
        let mut inf = Infer {
            subst: HashMap::new(),
            next: 0,
        };
        let ty = inf.infer(t, &mut Vec::new())?;
        let mut out = String::new();
        show(&inf.walk(&ty), &mut HashMap::new(), &mut out);
        Some(out)
    }
}

/// Number of closed terms with this skeleton: each leaf picks one of the
/// binders above it.
fn labelings(s: &Skeleton) -> u64 {
    fn go(s: &Skeleton, depth: u64) -> u64 {
        match s {
            Tree::Leaf(()) => depth,
            Tree::Unary(c) => go(c, depth + 1),
            Tree::Binary(l, r) => go(l, depth) * go(r, depth),
        }
    }
    go(s, 0)
}

#[test]
fn closed_terms_are_labelings_of_skeletons() {
    for n in 0..=9 {
        let by_labeling: u64 = motzkin(n).map(|s| labelings(&s)).sum();
        assert_eq!(closed_terms(n).count() as u64, by_labeling, "size {n}");
    }
}

#[test]
fn unique_closure_is_the_only_closed_term() {
    let mut by_skeleton: HashMap<Skeleton, Vec<Term>> = HashMap::new();
    for n in 0..=9 {
        for t in closed_terms(n) {
            by_skeleton.entry(t.to_skeleton()).or_default().push(t);
        }
        for s in uniquely_closable(n) {
            let terms = &by_skeleton[&s];
            assert_eq!(terms, &vec![s.close_unique().unwrap()], "{s}");
        }
    }
}

#[test]
fn inference_matches_naive_inferencer() {
    for n in 0..=8 {
        for t in closed_terms(n) {
            let ours = infer_type(&t).ok().map(|ty| ty.to_string());
            assert_eq!(ours, naive::type_of(&t), "{t}");
        }
    }
}

#[test]
fn constraint_search_finds_exactly_the_typable_terms() {
    for n in 0..=8 {
        let mut expected: HashMap<Skeleton, HashSet<(Term, String)>> = HashMap::new();
        for t in closed_terms(n) {
            if let Some(ty) = naive::type_of(&t) {
                expected.entry(t.to_skeleton()).or_default().insert((t, ty));
            }
        }
        for s in motzkin(n) {
            let found: HashSet<(Term, String)> = solve_upto(&build_constraints(&s), usize::MAX)
                .into_iter()
                .map(|sol| (sol.term, sol.ty.to_string()))
                .collect();
            assert_eq!(found, expected.remove(&s).unwrap_or_default(), "{s}");
        }
    }
}

#[test]
fn typable_closed_term_stream_matches_naive_count() {
    for n in 0..=8 {
        let naive = closed_terms(n)
            .filter(|t| naive::type_of(t).is_some())
            .count();
        assert_eq!(typable_closed_terms(n).count(), naive, "size {n}");
    }
}

#[test]
fn typable_uniquely_closable_skeletons_are_uniquely_typable() {
    for n in 0..=12 {
        for s in uniquely_closable(n) {
            assert_eq!(is_typable_skel(&s), is_uniquely_typable_skel(&s), "{s}");
        }
    }
}
