//! Named counting sequences and the ways to compute them.

use anyhow::{bail, Result};
use clap::ValueEnum;
use lambda_skeletons::enumerate::{
    closable, closed_terms, count_uniquely_closable_direct, count_uniquely_closable_parallel,
    motzkin, unclosable, uniquely_closable,
};
use lambda_skeletons::series::{
    binary_coeffs, catalan, closable_coeffs, closable_recurrence, motzkin_coeffs,
    recurrence_advance, unclosable_coeffs, uniquely_closable_coeffs, uniquely_closable_recurrence,
    CoefficientTable,
};
use lambda_skeletons::typecheck::{
    is_typable_skel, is_uniquely_typable_skel, is_untypable_closable_skel, typable_closed_terms,
    uniquely_closable_typable, BinaryTree,
};
use lambda_skeletons::SeqIndex;
use num_bigint::BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Sequence {
    Motzkin,
    Binary,
    ClosedTerms,
    Closable,
    Unclosable,
    UniquelyClosable,
    TypableClosedTerms,
    TypableSkeletons,
    UntypableSkeletons,
    UniquelyTypable,
    UniquelyClosableTypable,
    Catalan,
}

impl Sequence {
    pub const GOLDEN: [Sequence; 11] = [
        Sequence::Motzkin,
        Sequence::ClosedTerms,
        Sequence::Closable,
        Sequence::Unclosable,
        Sequence::UniquelyClosable,
        Sequence::TypableClosedTerms,
        Sequence::TypableSkeletons,
        Sequence::UntypableSkeletons,
        Sequence::UniquelyTypable,
        Sequence::UniquelyClosableTypable,
        Sequence::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sequence::Motzkin => "motzkin",
            Sequence::Binary => "binary",
            Sequence::ClosedTerms => "closed_terms",
            Sequence::Closable => "closable",
            Sequence::Unclosable => "unclosable",
            Sequence::UniquelyClosable => "uniquely_closable",
            Sequence::TypableClosedTerms => "typable_closed_terms",
            Sequence::TypableSkeletons => "typable_skeletons",
            Sequence::UntypableSkeletons => "untypable_skeletons",
            Sequence::UniquelyTypable => "uniquely_typable",
            Sequence::UniquelyClosableTypable => "uniquely_closable_typable",
            Sequence::Catalan => "catalan",
        }
    }

    /// Index label used in output: skeleton size, or `k` for Catalan numbers.
    pub fn index_name(self) -> &'static str {
        match self {
            Sequence::Catalan => "k",
            _ => "size",
        }
    }

    /// Largest index `check` computes by default.
    pub fn check_cutoff(self) -> usize {
        match self {
            Sequence::ClosedTerms | Sequence::TypableClosedTerms => 10,
            Sequence::TypableSkeletons
            | Sequence::UntypableSkeletons
            | Sequence::UniquelyTypable => 13,
            Sequence::UniquelyClosableTypable => 22,
            _ => usize::MAX,
        }
    }

    fn has_series(self) -> bool {
        matches!(
            self,
            Sequence::Motzkin
                | Sequence::Binary
                | Sequence::Closable
                | Sequence::Unclosable
                | Sequence::UniquelyClosable
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Method {
    /// Fastest available method.
    #[default]
    Auto,
    /// Generating-function coefficients.
    Series,
    /// Polynomial-coefficient recurrence.
    Recurrence,
    /// Enumerate and count.
    Enumerate,
    /// Derivation counting without building trees.
    Direct,
    /// Direct counting split across threads.
    Parallel,
}

fn series_table(seq: Sequence, method: Method, upto: SeqIndex) -> Result<CoefficientTable> {
    Ok(match (seq, method) {
        (Sequence::Motzkin, Method::Series | Method::Auto) => motzkin_coeffs(upto),
        (Sequence::Binary, Method::Series | Method::Auto) => binary_coeffs(upto),
        (Sequence::Closable, Method::Series | Method::Auto) => closable_coeffs(upto),
        (Sequence::Unclosable, Method::Series | Method::Auto) => unclosable_coeffs(upto),
        (Sequence::UniquelyClosable, Method::Series | Method::Auto) => {
            uniquely_closable_coeffs(upto)
        }
        (Sequence::Closable, Method::Recurrence) => {
            recurrence_advance(&closable_recurrence(), upto)?
        }
        (Sequence::UniquelyClosable, Method::Recurrence) => {
            recurrence_advance(&uniquely_closable_recurrence(), upto)?
        }
        _ => bail!("{} cannot be computed with method {method:?}", seq.name()),
    })
}

/// Coefficients by generating-function exponent, 0 through `upto`.
pub fn by_exponent(seq: Sequence, method: Method, upto: usize) -> Result<Vec<BigUint>> {
    if !seq.has_series() {
        bail!(
            "{} has no generating function here; index it by size",
            seq.name()
        );
    }
    Ok(series_table(seq, method, SeqIndex::Exponent(upto))?
        .coeffs()
        .to_vec())
}

fn count_each(upto: usize, f: impl Fn(usize) -> usize) -> Vec<BigUint> {
    (0..=upto).map(|n| BigUint::from(f(n))).collect()
}

/// Values at indices 0 through `upto`.
pub fn by_index(seq: Sequence, method: Method, upto: usize) -> Result<Vec<BigUint>> {
    use Method::*;
    use Sequence::*;
    let wants_series = matches!(method, Series | Recurrence)
        || (method == Auto && seq.has_series() && seq != UniquelyClosable);
    if wants_series {
        let table = series_table(seq, method, SeqIndex::Size(upto))?;
        return Ok(table.by_size().to_vec());
    }
    let values = match (seq, method) {
        (UniquelyClosable, Auto | Direct) => (0..=upto)
            .map(|n| BigUint::from(count_uniquely_closable_direct(n)))
            .collect(),
        (UniquelyClosable, Parallel) => (0..=upto)
            .map(|n| BigUint::from(count_uniquely_closable_parallel(n)))
            .collect(),
        (Catalan, Auto) => (0..=upto).map(catalan).collect(),
        (Catalan, Enumerate) => count_each(upto, |k| BinaryTree::all_with(k).len()),
        (_, Auto | Enumerate) => enumerate_counts(seq, upto)?,
        _ => bail!("{} cannot be computed with method {method:?}", seq.name()),
    };
    Ok(values)
}

fn enumerate_counts(seq: Sequence, upto: usize) -> Result<Vec<BigUint>> {
    use Sequence::*;
    let count: fn(usize) -> usize = match seq {
        Motzkin => |n| motzkin(n).count(),
        Binary => |n| motzkin(n).filter(|s| s.unary_count() == 0).count(),
        ClosedTerms => |n| closed_terms(n).count(),
        Closable => |n| closable(n).count(),
        Unclosable => |n| unclosable(n).count(),
        UniquelyClosable => |n| uniquely_closable(n).count(),
        TypableClosedTerms => |n| typable_closed_terms(n).count(),
        TypableSkeletons => |n| motzkin(n).filter(is_typable_skel).count(),
        UntypableSkeletons => |n| motzkin(n).filter(is_untypable_closable_skel).count(),
        UniquelyTypable => |n| motzkin(n).filter(is_uniquely_typable_skel).count(),
        UniquelyClosableTypable => |n| uniquely_closable_typable(n).count(),
        Catalan => |k| BinaryTree::all_with(k).len(),
    };
    Ok(count_each(upto, count))
}
