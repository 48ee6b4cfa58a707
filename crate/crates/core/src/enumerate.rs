//! Exhaustive generators for skeletons and closed terms of a given size.
//!
//! Every generator is a lazy stream. The order is fixed: at each node the
//! alternatives come as leaf, unary, binary; for a binary node the size `k`
//! given to the left subtree runs from 0 to `n - 2`, and within one `k` the
//! right subtree varies fastest. Variable indices ascend.
//!
//! Each stream restarts its inner generators for every outer choice, which is
//! the same backtracking a size-budgeted grammar performs.

use rayon::prelude::*;

use crate::term::{Index, Label, Skeleton, Term, Tree};

/// A boxed, lazily evaluated stream of trees.
pub type Stream<T> = Box<dyn Iterator<Item = T> + Send>;

fn empty<T: 'static>() -> Stream<T> {
    Box::new(std::iter::empty())
}

/// All `Binary(x, y)` with `size(x) + size(y) = n - 2`, `x` drawn from
/// `left(k)` and `y` from `right(n - 2 - k)`.
fn binaries<L, F, G>(n: usize, left: F, right: G) -> Stream<Tree<L>>
where
    L: Label,
    F: Fn(usize) -> Stream<Tree<L>> + Send + 'static,
    G: Fn(usize) -> Stream<Tree<L>> + Send + Clone + 'static,
{
    if n < 2 {
        return empty();
    }
    let rest = n - 2;
    Box::new((0..=rest).flat_map(move |k| {
        let right = right.clone();
        left(k).flat_map(move |x| right(rest - k).map(move |y| Tree::binary(x.clone(), y)))
    }))
}

/// Every Motzkin tree of size `n`.
pub fn motzkin(n: usize) -> Stream<Skeleton> {
    let leaf: Stream<Skeleton> = if n == 0 {
        Box::new(std::iter::once(Skeleton::leaf()))
    } else {
        empty()
    };
    let unary: Stream<Skeleton> = if n >= 1 {
        Box::new(motzkin(n - 1).map(Skeleton::unary))
    } else {
        empty()
    };
    Box::new(leaf.chain(unary).chain(binaries(n, motzkin, motzkin)))
}

/// Every closed de Bruijn term of size `n`.
pub fn closed_terms(n: usize) -> Stream<Term> {
    closed_under(n, 0)
}

fn closed_under(n: usize, binders: Index) -> Stream<Term> {
    let vars: Stream<Term> = if n == 0 {
        Box::new((0..binders).map(Term::var))
    } else {
        empty()
    };
    let lams: Stream<Term> = if n >= 1 {
        Box::new(closed_under(n - 1, binders + 1).map(Term::lam))
    } else {
        empty()
    };
    let side = move |k| closed_under(k, binders);
    Box::new(vars.chain(lams).chain(binaries(n, side, side)))
}

/// Closable skeletons of size `n`, straight from their grammar: a unary root
/// over any Motzkin tree, or a binary root over two closable skeletons.
pub fn closable(n: usize) -> Stream<Skeleton> {
    let unary: Stream<Skeleton> = if n >= 1 {
        Box::new(motzkin(n - 1).map(Skeleton::unary))
    } else {
        empty()
    };
    Box::new(unary.chain(binaries(n, closable, closable)))
}

/// Closable skeletons of size `n`, by filtering all Motzkin trees.
pub fn closable_by_filter(n: usize) -> Stream<Skeleton> {
    Box::new(motzkin(n).filter(Skeleton::is_closable))
}

/// Motzkin trees of size `n` that host no closed term.
pub fn unclosable(n: usize) -> Stream<Skeleton> {
    Box::new(motzkin(n).filter(|s| !s.is_closable()))
}

/// Interchangeable generators for uniquely closable skeletons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UniqueMethod {
    /// The context-free grammar: a unary root over a binary tree with no
    /// unary nodes, or a binary root over two uniquely closable skeletons.
    #[default]
    Grammar,
    /// Counts binders on the way down and admits a leaf only under exactly one.
    BinderCount,
    /// Marks subtrees below a binder so that no second binder enters them.
    Marker,
}

impl UniqueMethod {
    pub const ALL: [UniqueMethod; 3] = [
        UniqueMethod::Grammar,
        UniqueMethod::BinderCount,
        UniqueMethod::Marker,
    ];
}

/// Uniquely closable skeletons of size `n`.
pub fn uniquely_closable(n: usize) -> Stream<Skeleton> {
    uniquely_closable_with(UniqueMethod::Grammar, n)
}

pub fn uniquely_closable_with(method: UniqueMethod, n: usize) -> Stream<Skeleton> {
    match method {
        UniqueMethod::Grammar => unique_root(n),
        UniqueMethod::BinderCount => unique_by_binders(n, 0),
        UniqueMethod::Marker => unique_by_marker(n, LambdaMarker::HasNoLambda),
    }
}

fn unique_root(n: usize) -> Stream<Skeleton> {
    let unary: Stream<Skeleton> = if n >= 1 {
        Box::new(closed_above(n - 1).map(Skeleton::unary))
    } else {
        empty()
    };
    Box::new(unary.chain(binaries(n, unique_root, unique_root)))
}

/// Binary trees (no unary nodes) of size `n`.
fn closed_above(n: usize) -> Stream<Skeleton> {
    let leaf: Stream<Skeleton> = if n == 0 {
        Box::new(std::iter::once(Skeleton::leaf()))
    } else {
        empty()
    };
    Box::new(leaf.chain(binaries(n, closed_above, closed_above)))
}

fn unique_by_binders(n: usize, binders: usize) -> Stream<Skeleton> {
    let leaf: Stream<Skeleton> = if n == 0 && binders == 1 {
        Box::new(std::iter::once(Skeleton::leaf()))
    } else {
        empty()
    };
    let unary: Stream<Skeleton> = if n >= 1 {
        Box::new(unique_by_binders(n - 1, binders + 1).map(Skeleton::unary))
    } else {
        empty()
    };
    let side = move |k| unique_by_binders(k, binders);
    Box::new(leaf.chain(unary).chain(binaries(n, side, side)))
}

/// Whether a binder has already been crossed on the way down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaMarker {
    HasNoLambda,
    HasOneLambda,
}

fn unique_by_marker(n: usize, marker: LambdaMarker) -> Stream<Skeleton> {
    let leaf: Stream<Skeleton> = if n == 0 && marker == LambdaMarker::HasOneLambda {
        Box::new(std::iter::once(Skeleton::leaf()))
    } else {
        empty()
    };
    let unary: Stream<Skeleton> = if n >= 1 && marker == LambdaMarker::HasNoLambda {
        Box::new(unique_by_marker(n - 1, LambdaMarker::HasOneLambda).map(Skeleton::unary))
    } else {
        empty()
    };
    let side = move |k| unique_by_marker(k, marker);
    Box::new(leaf.chain(unary).chain(binaries(n, side, side)))
}

/// Number of uniquely closable skeletons of size `n`, found by running the
/// grammar's derivations one by one without building any tree.
///
/// Each nonterminal receives the remaining budget and a continuation that is
/// invoked once per way of consuming part of it; a derivation counts when the
/// final continuation sees an empty budget.
pub fn count_uniquely_closable_direct(n: usize) -> u64 {
    let mut count = 0u64;
    derive_unique(n, &mut |rest| {
        if rest == 0 {
            count += 1;
        }
    });
    count
}

/// Same count as [`count_uniquely_closable_direct`], with the derivations
/// split over threads by root production and left-subtree budget. The parts
/// are disjoint, so the sum is exactly the sequential count.
pub fn count_uniquely_closable_parallel(n: usize) -> u64 {
    let mut unary_rooted = 0u64;
    if n >= 1 {
        derive_closed_above(n - 1, &mut |rest| {
            if rest == 0 {
                unary_rooted += 1;
            }
        });
    }
    if n < 2 {
        return unary_rooted;
    }
    let rest = n - 2;
    let binary_rooted: u64 = (0..=rest)
        .into_par_iter()
        .map(|k| {
            let right = rest - k;
            let mut count = 0u64;
            // a left subtree consuming exactly k, then a right one consuming the rest
            derive_unique(k, &mut |after_left| {
                if after_left == 0 {
                    derive_unique(right, &mut |after_right| {
                        if after_right == 0 {
                            count += 1;
                        }
                    });
                }
            });
            count
        })
        .sum();
    unary_rooted + binary_rooted
}

fn derive_unique(budget: usize, done: &mut dyn FnMut(usize)) {
    if budget >= 1 {
        derive_closed_above(budget - 1, done);
    }
    if budget >= 2 {
        derive_unique(budget - 2, &mut |rest| derive_unique(rest, done));
    }
}

fn derive_closed_above(budget: usize, done: &mut dyn FnMut(usize)) {
    done(budget);
    if budget >= 2 {
        derive_closed_above(budget - 2, &mut |rest| derive_closed_above(rest, done));
    }
}
