//! The size calculus shared by every enumerator, counter and sampler.
//!
//! A lambda costs 1, an application 2 and a variable 0. Generating functions
//! are written with every node weighing 1 instead, which shifts all sizes by
//! one: a skeleton of size `s` is counted by the coefficient of `z^(s+1)`.

/// Per-constructor costs and the generating-function offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizePolicy {
    pub lambda_cost: usize,
    pub application_cost: usize,
    pub variable_cost: usize,
    pub gf_offset: usize,
}

pub const SIZE_POLICY: SizePolicy = SizePolicy {
    lambda_cost: 1,
    application_cost: 2,
    variable_cost: 0,
    gf_offset: 1,
};

/// A position in a counting sequence, tagged with how it is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqIndex {
    /// Weighted skeleton size.
    Size(usize),
    /// Exponent of the generating function.
    Exponent(usize),
}

impl SeqIndex {
    pub fn exponent(self) -> usize {
        match self {
            SeqIndex::Size(s) => s + SIZE_POLICY.gf_offset,
            SeqIndex::Exponent(e) => e,
        }
    }

    /// The skeleton size, or `None` for exponents below the offset (which no
    /// skeleton occupies).
    pub fn size(self) -> Option<usize> {
        match self {
            SeqIndex::Size(s) => Some(s),
            SeqIndex::Exponent(e) => e.checked_sub(SIZE_POLICY.gf_offset),
        }
    }

    pub fn kind(self) -> IndexKind {
        match self {
            SeqIndex::Size(_) => IndexKind::Size,
            SeqIndex::Exponent(_) => IndexKind::Exponent,
        }
    }

    pub fn value(self) -> usize {
        match self {
            SeqIndex::Size(v) | SeqIndex::Exponent(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Size,
    Exponent,
}

impl IndexKind {
    pub fn at(self, value: usize) -> SeqIndex {
        match self {
            IndexKind::Size => SeqIndex::Size(value),
            IndexKind::Exponent => SeqIndex::Exponent(value),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Size => "size",
            IndexKind::Exponent => "exponent",
        }
    }
}
