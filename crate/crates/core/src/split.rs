//! A-valued cochains on a split space `A ⊕ B`.
//!
//! `L` is taken to be every multilinear map on `A ⊕ B` whose values lie in
//! the `A`-block, graded by arity. The finer grading by the number of `A` and
//! `B` inputs is exposed through [`LElement::bidegrees`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{direct_sum_space, Algebra, Block, SplitAlgebra, SplitSpace};
use crate::cochain::{
    bracket_differential, delta_as_bracket, gerstenhaber_bracket, multi_indices, MultilinearMap,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A word `X_1..X_n` over `{A, B}` selecting one tensor summand of `(A ⊕ B)^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub Vec<Block>);

impl Pattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^n` patterns of length `n`, `A` before `B` lexicographically.
    pub fn all(n: usize) -> impl Iterator<Item = Pattern> {
        multi_indices(n, 2).map(|bits| {
            Pattern(
                bits.into_iter()
                    .map(|b| if b == 0 { Block::A } else { Block::B })
                    .collect(),
            )
        })
    }

    /// `(number of A's, number of B's)`
    pub fn bidegree(&self) -> (usize, usize) {
        let a = self.0.iter().filter(|&&b| b == Block::A).count();
        (a, self.len() - a)
    }

    pub fn matches(&self, split: &SplitSpace, idx: &[usize]) -> bool {
        idx.len() == self.len()
            && idx
                .iter()
                .zip(&self.0)
                .all(|(&i, &b)| split.block_of(i) == b)
    }

    pub fn parse(text: &str) -> Result<Pattern> {
        text.chars()
            .map(|c| match c {
                'A' | 'a' => Ok(Block::A),
                'B' | 'b' => Ok(Block::B),
                other => Err(Error::Format(format!("invalid pattern letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Pattern)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", if *b == Block::A { 'A' } else { 'B' })?;
        }
        Ok(())
    }
}

fn check_split<F: Field>(f: &MultilinearMap<F>, split: &SplitSpace) -> Result<()> {
    for found in [f.source_dim(), f.target_dim()] {
        if found != split.dim() {
            return Err(Error::DimensionMismatch {
                expected: split.dim(),
                found,
            });
        }
    }
    Ok(())
}

/// The component `P_{out} ∘ f ∘ i ∘ P_{pattern}`, embedded back into the
/// split space (zero off the pattern).
pub fn extract_component<F: Field>(
    f: &MultilinearMap<F>,
    split: &SplitSpace,
    pattern: &Pattern,
    out_block: Block,
) -> Result<MultilinearMap<F>> {
    check_split(f, split)?;
    if pattern.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: pattern.len(),
        });
    }
    let field = f.field();
    Ok(MultilinearMap::from_fn(
        field,
        f.arity(),
        split.dim(),
        split.dim(),
        |k, idx| {
            if split.block_of(k) == out_block && pattern.matches(split, idx) {
                f.get(k, idx).clone()
            } else {
                field.zero()
            }
        },
    ))
}

/// Membership in `L`: every output component in the `B`-block vanishes.
pub fn in_l<F: Field>(f: &MultilinearMap<F>, split: &SplitSpace) -> bool {
    if check_split(f, split).is_err() {
        return false;
    }
    let field = f.field();
    multi_indices(f.arity(), split.dim())
        .all(|idx| split.b_indices().all(|k| field.is_zero(f.get(k, &idx))))
}

/// An element of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LElement<F: Field> {
    map: MultilinearMap<F>,
    split: SplitSpace,
}

impl<F: Field> LElement<F> {
    pub fn new(map: MultilinearMap<F>, split: SplitSpace) -> Result<Self> {
        check_split(&map, &split)?;
        if !in_l(&map, &split) {
            return Err(Error::NotInL);
        }
        Ok(LElement { map, split })
    }

    pub fn zero(field: &F, arity: usize, split: SplitSpace) -> Self {
        LElement {
            map: MultilinearMap::zero(field, arity, split.dim(), split.dim()),
            split,
        }
    }

    /// The arity-1 element `a + b -> β(b)` for a linear map `β: B -> A`
    /// given as a `dim A x dim B` matrix.
    pub fn from_b_to_a(beta: &Matrix<F>, split: SplitSpace) -> Result<Self> {
        if beta.rows() != split.a_dim || beta.cols() != split.b_dim {
            return Err(Error::DimensionMismatch {
                expected: split.a_dim * split.b_dim,
                found: beta.rows() * beta.cols(),
            });
        }
        let field = beta.field();
        let map = MultilinearMap::from_fn(field, 1, split.dim(), split.dim(), |k, idx| {
            let i = idx[0];
            if k < split.a_dim && i >= split.a_dim {
                beta.get(k, i - split.a_dim).clone()
            } else {
                field.zero()
            }
        });
        Ok(LElement { map, split })
    }

    pub fn map(&self) -> &MultilinearMap<F> {
        &self.map
    }

    pub fn into_map(self) -> MultilinearMap<F> {
        self.map
    }

    pub fn split(&self) -> &SplitSpace {
        &self.split
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn component(&self, pattern: &Pattern) -> Result<MultilinearMap<F>> {
        extract_component(&self.map, &self.split, pattern, Block::A)
    }

    /// Nonzero components keyed by input pattern.
    pub fn components(&self) -> BTreeMap<Pattern, MultilinearMap<F>> {
        Pattern::all(self.arity())
            .filter_map(|p| {
                let c = self.component(&p).expect("pattern length equals arity");
                (!c.is_zero()).then_some((p, c))
            })
            .collect()
    }

    /// `(#A, #B)` input counts of the nonzero components.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.components().keys().map(Pattern::bidegree).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(LElement {
            map: self.map.add(&other.map)?,
            split: self.split,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(LElement {
            map: self.map.sub(&other.map)?,
            split: self.split,
        })
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        LElement {
            map: self.map.scale(s),
            split: self.split,
        }
    }
}

/// The dg Lie algebra `L` attached to a pair of algebras `A`, `B`, with the
/// base product `m_A ⊕ m_B` on `A ⊕ B`.
#[derive(Clone, Debug)]
pub struct SplitDgla<F: Field> {
    base: SplitAlgebra<F>,
}

impl<F: Field> SplitDgla<F> {
    pub fn new(a: &Algebra<F>, b: &Algebra<F>) -> Result<Self> {
        Ok(SplitDgla {
            base: direct_sum_space(a, b)?,
        })
    }

    pub fn base(&self) -> &SplitAlgebra<F> {
        &self.base
    }

    pub fn split(&self) -> SplitSpace {
        self.base.split
    }

    pub fn field(&self) -> &F {
        self.base.algebra.field()
    }

    /// The base product `m_A + m_B` as an arity-2 cochain.
    pub fn base_product(&self) -> &MultilinearMap<F> {
        self.base.algebra.product()
    }

    fn check(&self, f: &LElement<F>) -> Result<()> {
        if f.split != self.base.split {
            return Err(Error::DimensionMismatch {
                expected: self.base.split.dim(),
                found: f.split.dim(),
            });
        }
        Ok(())
    }

    fn wrap(&self, map: MultilinearMap<F>) -> Result<LElement<F>> {
        // closure of L under δ and the bracket: a failure here is a bug
        LElement::new(map, self.base.split)
    }

    pub fn element(&self, map: MultilinearMap<F>) -> Result<LElement<F>> {
        LElement::new(map, self.base.split)
    }

    /// Hochschild differential on `L`, in bracket form `(-1)^{n-1}[m_A + m_B, f]`.
    pub fn l_delta(&self, f: &LElement<F>) -> Result<LElement<F>> {
        self.check(f)?;
        self.wrap(delta_as_bracket(&f.map, self.base_product())?)
    }

    /// The dgLa differential `d f = [m_A + m_B, f]`.
    pub fn l_differential(&self, f: &LElement<F>) -> Result<LElement<F>> {
        self.check(f)?;
        self.wrap(bracket_differential(&f.map, self.base_product())?)
    }

    pub fn l_bracket(&self, f: &LElement<F>, g: &LElement<F>) -> Result<LElement<F>> {
        self.check(f)?;
        self.check(g)?;
        self.wrap(gerstenhaber_bracket(&f.map, &g.map)?)
    }
}
