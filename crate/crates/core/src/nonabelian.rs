//! Non-abelian 2-cocycles `(φ, ψ, χ)` of `B` with values in `A`.
//!
//! Conventions: `φ(b, a) = φ_b(a)`, `ψ(a, b) = ψ_b(a)`, `χ(b1, b2)`, so each
//! map's argument order is the order of the factors in the extension product
//! `(a1 + b1)(a2 + b2) = a1 a2 + φ_{b1}(a2) + ψ_{b2}(a1) + χ(b1, b2) + b1 b2`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{direct_sum_space, Algebra, Block, SplitAlgebra, SplitSpace};
use crate::cochain::{hochschild_delta, MultilinearMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::split::{extract_component, LElement, Pattern};

/// A bilinear map `X ⊗ Y -> Z`; `coeffs[(k * dim X + i) * dim Y + j]` is the
/// `k`-th coordinate of the image of `(x_i, y_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear<F: Field> {
    field: F,
    left_dim: usize,
    right_dim: usize,
    target_dim: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Bilinear<F> {
    pub fn zero(field: &F, left_dim: usize, right_dim: usize, target_dim: usize) -> Self {
        Bilinear {
            field: field.clone(),
            left_dim,
            right_dim,
            target_dim,
            coeffs: vec![field.zero(); left_dim * right_dim * target_dim],
        }
    }

    pub fn from_fn(
        field: &F,
        left_dim: usize,
        right_dim: usize,
        target_dim: usize,
        mut entry: impl FnMut(usize, usize, usize) -> F::Elem,
    ) -> Self {
        let mut out = Self::zero(field, left_dim, right_dim, target_dim);
        for k in 0..target_dim {
            for i in 0..left_dim {
                for j in 0..right_dim {
                    out.set(k, i, j, entry(k, i, j));
                }
            }
        }
        out
    }

    pub fn from_coeffs(
        field: &F,
        left_dim: usize,
        right_dim: usize,
        target_dim: usize,
        coeffs: Vec<F::Elem>,
    ) -> Result<Self> {
        let expected = left_dim * right_dim * target_dim;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Bilinear {
            field: field.clone(),
            left_dim,
            right_dim,
            target_dim,
            coeffs,
        })
    }

    pub fn random<R: Rng + ?Sized>(
        field: &F,
        left_dim: usize,
        right_dim: usize,
        target_dim: usize,
        rng: &mut R,
    ) -> Self {
        Self::from_fn(field, left_dim, right_dim, target_dim, |_, _, _| {
            field.random(rng)
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `(left_dim, right_dim, target_dim)`
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left_dim, self.right_dim, self.target_dim)
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    fn offset(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.left_dim + i) * self.right_dim + j
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &F::Elem {
        &self.coeffs[self.offset(k, i, j)]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, value: F::Elem) {
        let o = self.offset(k, i, j);
        self.coeffs[o] = value;
    }

    /// Image of the basis pair `(x_i, y_j)`.
    pub fn column(&self, i: usize, j: usize) -> Vec<F::Elem> {
        (0..self.target_dim)
            .map(|k| self.get(k, i, j).clone())
            .collect()
    }

    pub fn apply(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.left_dim, "left argument length");
        assert_eq!(y.len(), self.right_dim, "right argument length");
        let f = &self.field;
        let mut out = vec![f.zero(); self.target_dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let s = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    f.add_mul(o, &s, self.get(k, i, j));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                found: other.coeffs.len(),
            });
        }
        let f = &self.field;
        Ok(Bilinear {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(f, a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Bilinear {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
            ..self.clone()
        }
    }
}

/// The `left ⊗ right -> A` component of an arity-2 map on a split space.
pub fn restrict_component<F: Field>(
    map: &MultilinearMap<F>,
    split: &SplitSpace,
    left: Block,
    right: Block,
) -> Bilinear<F> {
    let (li, ri) = (split.indices(left), split.indices(right));
    Bilinear::from_fn(map.field(), li.len(), ri.len(), split.a_dim, |k, i, j| {
        map.get(k, &[li.start + i, ri.start + j]).clone()
    })
}

fn vadd<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().zip(y).map(|(a, b)| f.add(a, b)).collect()
}

fn vsub<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().zip(y).map(|(a, b)| f.sub(a, b)).collect()
}

fn vzero<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|c| f.is_zero(c))
}

/// A candidate non-abelian 2-cocycle; validity is checked, not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NabCocycle<F: Field> {
    pub a: Algebra<F>,
    pub b: Algebra<F>,
    pub phi: Bilinear<F>,
    pub psi: Bilinear<F>,
    pub chi: Bilinear<F>,
}

impl<F: Field> NabCocycle<F> {
    pub fn new(
        a: Algebra<F>,
        b: Algebra<F>,
        phi: Bilinear<F>,
        psi: Bilinear<F>,
        chi: Bilinear<F>,
    ) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(
                a.field().spec().to_string(),
                b.field().spec().to_string(),
            ));
        }
        let (da, db) = (a.dim(), b.dim());
        for (map, shape) in [
            (&phi, (db, da, da)),
            (&psi, (da, db, da)),
            (&chi, (db, db, da)),
        ] {
            if map.field() != a.field() {
                return Err(Error::FieldMismatch(
                    a.field().spec().to_string(),
                    map.field().spec().to_string(),
                ));
            }
            if map.shape() != shape {
                let (l, r, t) = shape;
                return Err(Error::DimensionMismatch {
                    expected: l * r * t,
                    found: map.coeffs().len(),
                });
            }
        }
        Ok(NabCocycle {
            a,
            b,
            phi,
            psi,
            chi,
        })
    }

    pub fn zero(a: &Algebra<F>, b: &Algebra<F>) -> Result<Self> {
        let f = a.field();
        let (da, db) = (a.dim(), b.dim());
        Self::new(
            a.clone(),
            b.clone(),
            Bilinear::zero(f, db, da, da),
            Bilinear::zero(f, da, db, da),
            Bilinear::zero(f, db, db, da),
        )
    }

    pub fn random<R: Rng + ?Sized>(a: &Algebra<F>, b: &Algebra<F>, rng: &mut R) -> Result<Self> {
        let f = a.field();
        let (da, db) = (a.dim(), b.dim());
        Self::new(
            a.clone(),
            b.clone(),
            Bilinear::random(f, db, da, da, rng),
            Bilinear::random(f, da, db, da, rng),
            Bilinear::random(f, db, db, da, rng),
        )
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn split(&self) -> SplitSpace {
        SplitSpace::new(self.a.dim(), self.b.dim())
    }

    /// `φ_b(a)`
    pub fn phi_at(&self, b: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        self.phi.apply(b, a)
    }

    /// `ψ_b(a)`
    pub fn psi_at(&self, b: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        self.psi.apply(a, b)
    }

    pub fn chi_at(&self, b1: &[F::Elem], b2: &[F::Elem]) -> Vec<F::Elem> {
        self.chi.apply(b1, b2)
    }

    fn ma(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.a.multiply(x, y).expect("A-vector lengths")
    }

    fn mb(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.b.multiply(x, y).expect("B-vector lengths")
    }
}

/// The identity in `ψ − φ : B -> Der(A)` that is violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DerivationIdentity {
    /// `ψ_b(a1 a2) = a1 ψ_b(a2)`
    RightAction,
    /// `φ_b(a1 a2) = φ_b(a1) a2`
    LeftAction,
    /// `ψ_b(a1) a2 = a1 φ_b(a2)`
    Middle,
    /// `ψ − φ` is a derivation; informational only.
    Leibniz,
}

/// The five cocycle equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Equation {
    /// `φ_{b1}(φ_{b2}(a)) = φ_{b1 b2}(a) + χ(b1, b2) a`
    LeftTwist,
    /// `ψ_{b1}(ψ_{b2}(a)) = ψ_{b2 b1}(a) + a χ(b2, b1)`
    RightTwist,
    /// `φ_{b1}(ψ_{b2}(a)) = ψ_{b2}(φ_{b1}(a))`
    Commute,
    Derivation(DerivationIdentity),
    /// `−φ_{b1}(χ(b2, b3)) + χ(b1 b2, b3) − χ(b1, b2 b3) + ψ_{b3}(χ(b1, b2)) = 0`
    ChiCocycle,
}

impl Equation {
    /// Short identifier shared by the derivation identities.
    pub fn name(&self) -> &'static str {
        match self {
            Equation::LeftTwist => "left_twist",
            Equation::RightTwist => "right_twist",
            Equation::Commute => "commute",
            Equation::Derivation(_) => "derivation",
            Equation::ChiCocycle => "chi_cocycle",
        }
    }

    /// Input pattern of the associator component this equation controls.
    pub fn pattern(&self) -> Pattern {
        let word = match self {
            Equation::LeftTwist => "BBA",
            Equation::RightTwist => "ABB",
            Equation::Commute => "BAB",
            Equation::Derivation(DerivationIdentity::RightAction) => "AAB",
            Equation::Derivation(DerivationIdentity::Middle) => "ABA",
            Equation::Derivation(_) => "BAA",
            Equation::ChiCocycle => "BBB",
        };
        Pattern::parse(word).expect("static pattern")
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::LeftTwist => write!(f, "left twisted module"),
            Equation::RightTwist => write!(f, "right twisted module"),
            Equation::Commute => write!(f, "actions commute"),
            Equation::Derivation(DerivationIdentity::RightAction) => {
                write!(f, "psi_b(a1 a2) = a1 psi_b(a2)")
            }
            Equation::Derivation(DerivationIdentity::LeftAction) => {
                write!(f, "phi_b(a1 a2) = phi_b(a1) a2")
            }
            Equation::Derivation(DerivationIdentity::Middle) => {
                write!(f, "psi_b(a1) a2 = a1 phi_b(a2)")
            }
            Equation::Derivation(DerivationIdentity::Leibniz) => {
                write!(f, "psi - phi is a derivation")
            }
            Equation::ChiCocycle => write!(f, "chi cocycle"),
        }
    }
}

/// A failed equation at a basis triple.
///
/// `witness` holds indices into the split space `A ⊕ B` (A first). Except
/// for [`DerivationIdentity::Leibniz`], `discrepancy` is exactly the A-part of
/// the associator of [`build_extension`] at `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation<F: Field> {
    pub which: Equation,
    pub witness: [usize; 3],
    pub discrepancy: Vec<F::Elem>,
}

fn require_associative<F: Field>(c: &NabCocycle<F>) -> Result<()> {
    if !c.a.is_associative() {
        return Err(Error::NotAssociative("A"));
    }
    if !c.b.is_associative() {
        return Err(Error::NotAssociative("B"));
    }
    Ok(())
}

/// Lazily evaluates one equation on all basis triples, yielding violations.
fn equation_violations<'a, F: Field>(
    c: &'a NabCocycle<F>,
    which: Equation,
) -> impl Iterator<Item = CocycleViolation<F>> + 'a {
    let f = c.field();
    let split = c.split();
    let pattern = which.pattern();
    let dims: Vec<usize> = pattern
        .0
        .iter()
        .map(|&blk| {
            if blk == Block::A {
                c.a.dim()
            } else {
                c.b.dim()
            }
        })
        .collect();
    let total: usize = dims.iter().product();
    (0..total).filter_map(move |mut flat| {
        let mut local = [0usize; 3];
        for s in (0..3).rev() {
            local[s] = flat % dims[s];
            flat /= dims[s];
        }
        let vec_of = |s: usize| {
            if pattern.0[s] == Block::A {
                c.a.basis_vector(local[s])
            } else {
                c.b.basis_vector(local[s])
            }
        };
        let (x, y, z) = (vec_of(0), vec_of(1), vec_of(2));
        let d = match which {
            Equation::LeftTwist => {
                // (b1 b2) a - b1 (b2 a)
                let (b1, b2, a) = (&x, &y, &z);
                let lhs = vadd(f, &c.phi_at(&c.mb(b1, b2), a), &c.ma(&c.chi_at(b1, b2), a));
                vsub(f, &lhs, &c.phi_at(b1, &c.phi_at(b2, a)))
            }
            Equation::RightTwist => {
                // (a b2) b3 - a (b2 b3)
                let (a, b2, b3) = (&x, &y, &z);
                let lhs = c.psi_at(b3, &c.psi_at(b2, a));
                let rhs = vadd(f, &c.psi_at(&c.mb(b2, b3), a), &c.ma(a, &c.chi_at(b2, b3)));
                vsub(f, &lhs, &rhs)
            }
            Equation::Commute => {
                let (b1, a, b2) = (&x, &y, &z);
                vsub(
                    f,
                    &c.psi_at(b2, &c.phi_at(b1, a)),
                    &c.phi_at(b1, &c.psi_at(b2, a)),
                )
            }
            Equation::Derivation(DerivationIdentity::RightAction) => {
                let (a1, a2, b) = (&x, &y, &z);
                vsub(f, &c.psi_at(b, &c.ma(a1, a2)), &c.ma(a1, &c.psi_at(b, a2)))
            }
            Equation::Derivation(DerivationIdentity::Middle) => {
                let (a1, b, a2) = (&x, &y, &z);
                vsub(f, &c.ma(&c.psi_at(b, a1), a2), &c.ma(a1, &c.phi_at(b, a2)))
            }
            Equation::Derivation(DerivationIdentity::LeftAction) => {
                let (b, a1, a2) = (&x, &y, &z);
                vsub(f, &c.ma(&c.phi_at(b, a1), a2), &c.phi_at(b, &c.ma(a1, a2)))
            }
            Equation::Derivation(DerivationIdentity::Leibniz) => {
                let (b, a1, a2) = (&x, &y, &z);
                let dd = |v: &[F::Elem]| vsub(f, &c.psi_at(b, v), &c.phi_at(b, v));
                let lhs = dd(&c.ma(a1, a2));
                let rhs = vadd(f, &c.ma(&dd(a1), a2), &c.ma(a1, &dd(a2)));
                vsub(f, &lhs, &rhs)
            }
            Equation::ChiCocycle => {
                let (b1, b2, b3) = (&x, &y, &z);
                let pos = vadd(
                    f,
                    &c.chi_at(&c.mb(b1, b2), b3),
                    &c.psi_at(b3, &c.chi_at(b1, b2)),
                );
                let neg = vadd(
                    f,
                    &c.chi_at(b1, &c.mb(b2, b3)),
                    &c.phi_at(b1, &c.chi_at(b2, b3)),
                );
                vsub(f, &pos, &neg)
            }
        };
        if vzero(f, &d) {
            return None;
        }
        let mut witness = [0usize; 3];
        for s in 0..3 {
            witness[s] = match pattern.0[s] {
                Block::A => local[s],
                Block::B => split.b_index(local[s]),
            };
        }
        Some(CocycleViolation {
            which,
            witness,
            discrepancy: d,
        })
    })
}

/// Equations whose conjunction defines validity, in reporting order.
pub const VALIDITY_EQUATIONS: [Equation; 7] = [
    Equation::LeftTwist,
    Equation::RightTwist,
    Equation::Commute,
    Equation::Derivation(DerivationIdentity::RightAction),
    Equation::Derivation(DerivationIdentity::LeftAction),
    Equation::Derivation(DerivationIdentity::Middle),
    Equation::ChiCocycle,
];

fn all_violations<'a, F: Field>(
    c: &'a NabCocycle<F>,
) -> impl Iterator<Item = CocycleViolation<F>> + 'a {
    VALIDITY_EQUATIONS
        .into_iter()
        .flat_map(move |eq| equation_violations(c, eq))
}

/// Every violation of the cocycle equations; empty means valid.
///
/// Equation (4) is tested through the three identities
/// [`DerivationIdentity::RightAction`], [`DerivationIdentity::LeftAction`] and
/// [`DerivationIdentity::Middle`]; see [`check_derivation_condition`] for the
/// weaker derivation form.
pub fn check_cocycle<F: Field>(c: &NabCocycle<F>) -> Result<Vec<CocycleViolation<F>>> {
    require_associative(c)?;
    Ok(all_violations(c).collect())
}

pub fn first_violation<F: Field>(c: &NabCocycle<F>) -> Result<Option<CocycleViolation<F>>> {
    require_associative(c)?;
    Ok(all_violations(c).next())
}

pub fn is_valid_cocycle<F: Field>(c: &NabCocycle<F>) -> Result<bool> {
    Ok(first_violation(c)?.is_none())
}

/// Violations of "`ψ − φ` is a derivation of `A`" alone.
pub fn check_derivation_condition<F: Field>(c: &NabCocycle<F>) -> Vec<CocycleViolation<F>> {
    equation_violations(c, Equation::Derivation(DerivationIdentity::Leibniz)).collect()
}

/// The twisted product `m_E` on `A ⊕ B`.
pub fn build_extension<F: Field>(c: &NabCocycle<F>) -> Result<SplitAlgebra<F>> {
    let base = direct_sum_space(&c.a, &c.b)?;
    let split = base.split;
    let f = c.field();
    let algebra = Algebra::from_table(f, base.algebra.basis_names().to_vec(), |i, j| {
        let mut col = base.algebra.structure_constants(i, j);
        let extra = match (split.block_of(i), split.block_of(j)) {
            (Block::A, Block::A) => return col,
            (Block::B, Block::A) => c.phi.column(i - split.a_dim, j),
            (Block::A, Block::B) => c.psi.column(i, j - split.a_dim),
            (Block::B, Block::B) => c.chi.column(i - split.a_dim, j - split.a_dim),
        };
        for (k, x) in extra.into_iter().enumerate() {
            col[k] = f.add(&col[k], &x);
        }
        col
    })?;
    Ok(SplitAlgebra { algebra, split })
}

/// All sixteen components of the associator of `m`, keyed by input pattern
/// and output block.
pub fn associator_component_table<F: Field>(
    m: &SplitAlgebra<F>,
) -> BTreeMap<(Pattern, Block), MultilinearMap<F>> {
    let assoc = m.algebra.associator_map();
    let mut table = BTreeMap::new();
    for p in Pattern::all(3) {
        for out in [Block::A, Block::B] {
            let comp = extract_component(&assoc, &m.split, &p, out).expect("arity 3");
            table.insert((p.clone(), out), comp);
        }
    }
    table
}

/// Sum of the A-valued associator components over the seven patterns other
/// than `AAA`.
pub fn mixed_a_associator<F: Field>(m: &SplitAlgebra<F>) -> MultilinearMap<F> {
    let dim = m.split.dim();
    let table = associator_component_table(m);
    let aaa = Pattern::parse("AAA").expect("static pattern");
    table
        .iter()
        .filter(|((p, out), _)| *out == Block::A && *p != aaa)
        .fold(
            MultilinearMap::zero(m.algebra.field(), 3, dim, dim),
            |acc, (_, comp)| acc.add(comp).expect("same shape"),
        )
}

/// `χ + φ + ψ` as one arity-2 element of `L`.
pub fn cocycle_to_mc<F: Field>(c: &NabCocycle<F>) -> LElement<F> {
    let split = c.split();
    let f = c.field();
    let map = MultilinearMap::from_fn(f, 2, split.dim(), split.dim(), |k, idx| {
        if k >= split.a_dim {
            return f.zero();
        }
        let (i, j) = (idx[0], idx[1]);
        match (split.block_of(i), split.block_of(j)) {
            (Block::A, Block::A) => f.zero(),
            (Block::B, Block::A) => c.phi.get(k, i - split.a_dim, j).clone(),
            (Block::A, Block::B) => c.psi.get(k, i, j - split.a_dim).clone(),
            (Block::B, Block::B) => c.chi.get(k, i - split.a_dim, j - split.a_dim).clone(),
        }
    });
    LElement::new(map, split).expect("values lie in A")
}

/// Reads `(φ, ψ, χ)` back from an arity-2 element with zero `AA` component.
pub fn cocycle_from_mc<F: Field>(
    x: &LElement<F>,
    a: &Algebra<F>,
    b: &Algebra<F>,
) -> Result<NabCocycle<F>> {
    let split = *x.split();
    if x.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: x.arity(),
        });
    }
    if split != SplitSpace::new(a.dim(), b.dim()) {
        return Err(Error::DimensionMismatch {
            expected: a.dim() + b.dim(),
            found: split.dim(),
        });
    }
    if !restrict_component(x.map(), &split, Block::A, Block::A).is_zero() {
        return Err(Error::NotCocycleShaped);
    }
    NabCocycle::new(
        a.clone(),
        b.clone(),
        restrict_component(x.map(), &split, Block::B, Block::A),
        restrict_component(x.map(), &split, Block::A, Block::B),
        restrict_component(x.map(), &split, Block::B, Block::B),
    )
}

/// A linear map `β: B -> A` as a `dim A x dim B` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeParam<F: Field> {
    pub beta: Matrix<F>,
}

impl<F: Field> GaugeParam<F> {
    pub fn new(beta: Matrix<F>, a_dim: usize, b_dim: usize) -> Result<Self> {
        if beta.rows() != a_dim || beta.cols() != b_dim {
            return Err(Error::DimensionMismatch {
                expected: a_dim * b_dim,
                found: beta.rows() * beta.cols(),
            });
        }
        Ok(GaugeParam { beta })
    }

    pub fn zero(field: &F, a_dim: usize, b_dim: usize) -> Self {
        GaugeParam {
            beta: Matrix::zeros(field, a_dim, b_dim),
        }
    }

    pub fn random<R: Rng + ?Sized>(field: &F, a_dim: usize, b_dim: usize, rng: &mut R) -> Self {
        let data = (0..a_dim * b_dim).map(|_| field.random(rng)).collect();
        GaugeParam {
            beta: Matrix::from_rows(field, a_dim, b_dim, data).expect("sized data"),
        }
    }

    pub fn a_dim(&self) -> usize {
        self.beta.rows()
    }

    pub fn b_dim(&self) -> usize {
        self.beta.cols()
    }

    pub fn apply(&self, b: &[F::Elem]) -> Vec<F::Elem> {
        self.beta.apply(b).expect("B-vector length")
    }

    pub fn neg(&self) -> Self {
        GaugeParam {
            beta: self.beta.neg(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(GaugeParam {
            beta: self.beta.add(&other.beta)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.beta.is_zero()
    }

    /// `β` as an arity-1 element of `L`.
    pub fn to_l(&self) -> LElement<F> {
        LElement::from_b_to_a(&self.beta, SplitSpace::new(self.a_dim(), self.b_dim()))
            .expect("shape checked at construction")
    }

    fn check_for(&self, c: &NabCocycle<F>) -> Result<()> {
        if (self.a_dim(), self.b_dim()) != (c.a.dim(), c.b.dim()) {
            return Err(Error::DimensionMismatch {
                expected: c.a.dim() * c.b.dim(),
                found: self.a_dim() * self.b_dim(),
            });
        }
        Ok(())
    }
}

/// The cocycle obtained from `c` by changing the section `s` to `s − β`:
///
/// `φ'_b(a) = φ_b(a) − β(b) a`, `ψ'_b(a) = ψ_b(a) − a β(b)`,
/// `χ'(b1, b2) = χ(b1, b2) − φ_{b1}(β(b2)) − ψ_{b2}(β(b1)) + β(b1 b2) + β(b1) β(b2)`.
///
/// `T_β ∘ T_γ = T_{β+γ}`, so the relation `c' = T_β(c)` is an equivalence.
pub fn cocycle_equivalence_transform<F: Field>(
    c: &NabCocycle<F>,
    beta: &GaugeParam<F>,
) -> Result<NabCocycle<F>> {
    beta.check_for(c)?;
    let f = c.field();
    let (da, db) = (c.a.dim(), c.b.dim());
    let ea = |i: usize| c.a.basis_vector(i);
    let eb = |i: usize| c.b.basis_vector(i);
    let bb = |j: usize| beta.beta.column(j);
    let cols =
        |mut value: Box<dyn FnMut(usize, usize) -> Vec<F::Elem> + '_>, l: usize, r: usize| {
            let mut out = Bilinear::zero(f, l, r, da);
            for i in 0..l {
                for j in 0..r {
                    for (k, x) in value(i, j).into_iter().enumerate() {
                        out.set(k, i, j, x);
                    }
                }
            }
            out
        };
    let phi = cols(
        Box::new(|i, j| vsub(f, &c.phi.column(i, j), &c.ma(&bb(i), &ea(j)))),
        db,
        da,
    );
    let psi = cols(
        Box::new(|i, j| vsub(f, &c.psi.column(i, j), &c.ma(&ea(i), &bb(j)))),
        da,
        db,
    );
    let chi = cols(
        Box::new(|i, j| {
            let mut v = c.chi.column(i, j);
            v = vsub(f, &v, &c.phi_at(&eb(i), &bb(j)));
            v = vsub(f, &v, &c.psi_at(&eb(j), &bb(i)));
            v = vadd(f, &v, &beta.apply(&c.mb(&eb(i), &eb(j))));
            vadd(f, &v, &c.ma(&bb(i), &bb(j)))
        }),
        db,
        db,
    );
    NabCocycle::new(c.a.clone(), c.b.clone(), phi, psi, chi)
}

pub fn are_equivalent_via<F: Field>(
    c: &NabCocycle<F>,
    c2: &NabCocycle<F>,
    beta: &GaugeParam<F>,
) -> Result<bool> {
    Ok(cocycle_equivalence_transform(c, beta)? == *c2)
}

/// The three equivalence equations read literally:
/// `φ_b(a) = φ'_b(a) − β(b) a`, `ψ_b(a) = ψ'_b(a) − a β(b)` and the `χ'`
/// formula of [`cocycle_equivalence_transform`]. In characteristic 2 this
/// coincides with `c' = T_β(c)`; otherwise the first two equations carry the
/// opposite orientation to the third.
pub fn satisfies_literal_relation<F: Field>(
    c: &NabCocycle<F>,
    c2: &NabCocycle<F>,
    beta: &GaugeParam<F>,
) -> Result<bool> {
    let t = cocycle_equivalence_transform(c, beta)?;
    let t_neg = cocycle_equivalence_transform(c, &beta.neg())?;
    Ok(t.chi == c2.chi && t_neg.phi == c2.phi && t_neg.psi == c2.psi)
}

/// The abelian reading of a cocycle with `m_A = 0`: `A` is a `B`-bimodule via
/// `(φ, ψ)` and `χ` is a Hochschild 2-cochain with values in it.
#[derive(Clone, Debug)]
pub struct AbelianData<F: Field> {
    pub phi: Bilinear<F>,
    pub psi: Bilinear<F>,
    pub chi: Bilinear<F>,
    /// `A ⋊ B`: the extension with `χ = 0`.
    pub semidirect: SplitAlgebra<F>,
    /// `δχ` on `B^{⊗3}`, embedded in the split space.
    pub delta_chi: MultilinearMap<F>,
}

impl<F: Field> AbelianData<F> {
    pub fn is_hochschild_cocycle(&self) -> bool {
        self.delta_chi.is_zero()
    }
}

fn abelian_parts<F: Field>(c: &NabCocycle<F>) -> Result<(SplitAlgebra<F>, MultilinearMap<F>)> {
    if !c.a.has_zero_product() {
        return Err(Error::NonZeroMultiplication);
    }
    let mut bare = c.clone();
    bare.chi = Bilinear::zero(c.field(), c.b.dim(), c.b.dim(), c.a.dim());
    let semidirect = build_extension(&bare)?;
    let mut only_chi = NabCocycle::zero(&c.a, &c.b)?;
    only_chi.chi = c.chi.clone();
    Ok((semidirect, cocycle_to_mc(&only_chi).into_map()))
}

/// Reinterprets a valid cocycle with `m_A = 0` as bimodule data plus `χ`, and
/// computes `δχ` with the Hochschild differential of `A ⋊ B`.
pub fn abelian_specialize<F: Field>(c: &NabCocycle<F>) -> Result<AbelianData<F>> {
    let (semidirect, chi_map) = abelian_parts(c)?;
    if let Some(v) = first_violation(c)? {
        return Err(Error::InvalidCocycle(format!(
            "{} at {:?}",
            v.which, v.witness
        )));
    }
    let delta = hochschild_delta(&chi_map, &semidirect.algebra)?;
    let bbb = Pattern::parse("BBB").expect("static pattern");
    let delta_chi = extract_component(&delta, &semidirect.split, &bbb, Block::A)?;
    Ok(AbelianData {
        phi: c.phi.clone(),
        psi: c.psi.clone(),
        chi: c.chi.clone(),
        semidirect,
        delta_chi,
    })
}

/// `δβ` on `B ⊗ B` for the bimodule `(A, φ, ψ)`, i.e.
/// `φ_{b1}(β(b2)) − β(b1 b2) + ψ_{b2}(β(b1))`.
pub fn abelian_coboundary<F: Field>(
    c: &NabCocycle<F>,
    beta: &GaugeParam<F>,
) -> Result<Bilinear<F>> {
    beta.check_for(c)?;
    let (semidirect, _) = abelian_parts(c)?;
    let delta = hochschild_delta(beta.to_l().map(), &semidirect.algebra)?;
    Ok(restrict_component(
        &delta,
        &semidirect.split,
        Block::B,
        Block::B,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn line<F: Field>(f: &F, name: &str, square: i64) -> Algebra<F> {
        Algebra::from_table(f, vec![name.into()], |_, _| vec![f.from_i64(square)]).unwrap()
    }

    fn bil<F: Field>(f: &F, l: usize, r: usize, t: usize, v: &[i64]) -> Bilinear<F> {
        Bilinear::from_coeffs(f, l, r, t, v.iter().map(|&x| f.from_i64(x)).collect()).unwrap()
    }

    /// `A = F a, a^2 = 0`, `B = F b, b^2 = b`, `φ_b = ψ_b = id`, `χ(b, b) = a`.
    fn hand_cocycle<F: Field>(f: &F) -> NabCocycle<F> {
        NabCocycle::new(
            line(f, "a", 0),
            line(f, "b", 1),
            bil(f, 1, 1, 1, &[1]),
            bil(f, 1, 1, 1, &[1]),
            bil(f, 1, 1, 1, &[1]),
        )
        .unwrap()
    }

    /// A 2-dim algebra with `x^2 = y`, other products zero.
    fn nil2<F: Field>(f: &F, p: &str) -> Algebra<F> {
        Algebra::from_table(f, vec![format!("{p}0"), format!("{p}1")], |i, j| {
            if (i, j) == (0, 0) {
                vec![f.zero(), f.one()]
            } else {
                vec![f.zero(), f.zero()]
            }
        })
        .unwrap()
    }

    #[test]
    fn zero_cocycle_is_valid_and_builds_the_direct_sum() {
        let f = f2();
        for (a2, b2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let c = NabCocycle::zero(&line(&f, "a", a2), &line(&f, "b", b2)).unwrap();
            assert!(check_cocycle(&c).unwrap().is_empty());
            let sum = direct_sum_space(&c.a, &c.b).unwrap();
            assert_eq!(build_extension(&c).unwrap(), sum);
            assert!(cocycle_to_mc(&c).is_zero());
        }
    }

    #[test]
    fn hand_cocycle_is_valid() {
        let f = f2();
        let c = hand_cocycle(&f);
        assert!(check_cocycle(&c).unwrap().is_empty());
        assert!(check_derivation_condition(&c).is_empty());
        let e = build_extension(&c).unwrap().algebra;
        // basis (a, b): b^2 = a + b, ab = ba = a, a^2 = 0
        assert_eq!(e.structure_constants(1, 1), vec![1, 1]);
        assert_eq!(e.structure_constants(0, 1), vec![1, 0]);
        assert_eq!(e.structure_constants(1, 0), vec![1, 0]);
        assert_eq!(e.structure_constants(0, 0), vec![0, 0]);
        assert!(e.is_associative());
    }

    #[test]
    fn one_sided_action_with_square_zero_a_is_valid() {
        // φ_b = id, ψ = 0, χ = 0: both the derivation condition and the three identities accept it, and so
        // does associativity of the extension.
        let f = f2();
        let c = NabCocycle::new(
            line(&f, "a", 0),
            line(&f, "b", 1),
            bil(&f, 1, 1, 1, &[1]),
            bil(&f, 1, 1, 1, &[0]),
            bil(&f, 1, 1, 1, &[0]),
        )
        .unwrap();
        assert!(check_cocycle(&c).unwrap().is_empty());
        assert!(check_derivation_condition(&c).is_empty());
        assert!(build_extension(&c).unwrap().algebra.is_associative());
    }

    #[test]
    fn derivation_condition_is_strictly_weaker() {
        // φ = ψ makes ψ − φ = 0 a derivation, while ψ_b(a1 a2) = a1 ψ_b(a2)
        // can still fail once A has a nonzero product.
        let f = f2();
        let a = nil2(&f, "a");
        let b = line(&f, "b", 0);
        let found = (0u32..1 << 10).find_map(|bits| {
            let v = |s: u32| i64::from((bits >> s) & 1);
            let c = NabCocycle::new(
                a.clone(),
                b.clone(),
                bil(&f, 1, 2, 2, &[v(0), v(1), v(2), v(3)]),
                bil(&f, 2, 1, 2, &[v(4), v(5), v(6), v(7)]),
                bil(&f, 1, 1, 2, &[v(8), v(9)]),
            )
            .unwrap();
            let strong = check_cocycle(&c).unwrap();
            let discriminates = check_derivation_condition(&c).is_empty()
                && strong
                    .iter()
                    .any(|v| matches!(v.which, Equation::Derivation(_)));
            discriminates.then_some(c)
        });
        let c = found.expect("a derivation pair failing the three identities");
        assert!(!build_extension(&c).unwrap().algebra.is_associative());
    }

    #[test]
    fn non_associative_inputs_are_rejected() {
        let f = f2();
        let bad = Algebra::from_table(&f, vec!["x".into(), "y".into()], |i, j| match (i, j) {
            (0, 0) => vec![0, 1],
            (1, 0) => vec![1, 0],
            _ => vec![0, 0],
        })
        .unwrap();
        let c = NabCocycle::zero(&bad, &line(&f, "b", 1)).unwrap();
        assert_eq!(check_cocycle(&c), Err(Error::NotAssociative("A")));
        let c = NabCocycle::zero(&line(&f, "a", 1), &bad).unwrap();
        assert_eq!(is_valid_cocycle(&c), Err(Error::NotAssociative("B")));
    }

    #[test]
    fn shapes_are_checked() {
        let f = f2();
        let a = line(&f, "a", 0);
        let b = nil2(&f, "b");
        let wrong = Bilinear::zero(&f, 1, 1, 1);
        let ok = NabCocycle::zero(&a, &b).unwrap();
        assert!(NabCocycle::new(a, b, wrong, ok.psi, ok.chi).is_err());
    }

    #[test]
    fn violations_pair_with_associator_entries() {
        let f = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shapes = [
            (line(&f, "a", 0), nil2(&f, "b")),
            (nil2(&f, "a"), line(&f, "b", 1)),
            (line(&f, "a", 1), line(&f, "b", 1)),
        ];
        let mut invalid = 0;
        for (a, b) in &shapes {
            for _ in 0..60 {
                let c = NabCocycle::random(a, b, &mut rng).unwrap();
                let violations = check_cocycle(&c).unwrap();
                let e = build_extension(&c).unwrap();
                assert_eq!(violations.is_empty(), e.algebra.is_associative());
                for v in &violations {
                    let [x, y, z] = v.witness;
                    let assoc = e
                        .algebra
                        .associator(
                            &e.algebra.basis_vector(x),
                            &e.algebra.basis_vector(y),
                            &e.algebra.basis_vector(z),
                        )
                        .unwrap();
                    assert_eq!(
                        e.split.a_part::<PrimeField>(&assoc),
                        v.discrepancy,
                        "{}",
                        v.which
                    );
                    assert!(v.which.pattern().matches(&e.split, &v.witness));
                }
                invalid += usize::from(!violations.is_empty());
            }
        }
        assert!(invalid > 0);
    }

    #[test]
    fn right_twist_uses_the_transposed_chi() {
        // B = Q<b0, b1> with b0^2 = b1, A = Q a with a^2 = a, χ(b0, b1) = 1
        // and χ(b1, b0) = 0: the right twist must use χ(b2, b1).
        let q = Rationals;
        let a = line(&q, "a", 1);
        let b = nil2(&q, "b");
        let c = NabCocycle::new(
            a.clone(),
            b.clone(),
            Bilinear::zero(&q, 2, 1, 1),
            Bilinear::zero(&q, 1, 2, 1),
            bil(&q, 2, 2, 1, &[0, 1, 0, 0]),
        )
        .unwrap();
        let v: Vec<_> = check_cocycle(&c)
            .unwrap()
            .into_iter()
            .filter(|v| v.which == Equation::RightTwist)
            .collect();
        // (a b0) b1 - a (b0 b1) = 0 - a χ(b0, b1) = -a
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].witness, [0, 1, 2]);
        assert_eq!(v[0].discrepancy, vec![q.from_i64(-1)]);
    }

    #[test]
    fn mc_embedding_round_trips() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = nil2(&q, "a");
        let b = line(&q, "b", 1);
        let c = NabCocycle::random(&a, &b, &mut rng).unwrap();
        let x = cocycle_to_mc(&c);
        let ba = Pattern::parse("BA").unwrap();
        let split = c.split();
        let phi_embedded = MultilinearMap::from_fn(&q, 2, 3, 3, |k, idx| {
            if k < 2 && split.block_of(idx[0]) == Block::B && idx[1] < 2 {
                c.phi.get(k, idx[0] - 2, idx[1]).clone()
            } else {
                q.zero()
            }
        });
        assert_eq!(x.component(&ba).unwrap(), phi_embedded);
        assert_eq!(cocycle_from_mc(&x, &a, &b).unwrap(), c);
        let aa = LElement::new(
            MultilinearMap::from_fn(&q, 2, 3, 3, |k, idx| {
                if k == 0 && idx == [0, 0] {
                    q.one()
                } else {
                    q.zero()
                }
            }),
            split,
        )
        .unwrap();
        assert_eq!(cocycle_from_mc(&aa, &a, &b), Err(Error::NotCocycleShaped));
    }

    #[test]
    fn transform_is_an_additive_action() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = nil2(&q, "a");
        let b = nil2(&q, "b");
        for _ in 0..5 {
            let c = NabCocycle::random(&a, &b, &mut rng).unwrap();
            let b1 = GaugeParam::random(&q, 2, 2, &mut rng);
            let b2 = GaugeParam::random(&q, 2, 2, &mut rng);
            let once = cocycle_equivalence_transform(&c, &b1.add(&b2).unwrap()).unwrap();
            let twice = cocycle_equivalence_transform(
                &cocycle_equivalence_transform(&c, &b1).unwrap(),
                &b2,
            )
            .unwrap();
            assert_eq!(once, twice);
            assert!(are_equivalent_via(&c, &c, &GaugeParam::zero(&q, 2, 2)).unwrap());
        }
    }

    #[test]
    fn transform_preserves_validity() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = Algebra::diagonal_idempotents(&q, "a", 2).unwrap();
        let b = nil2(&q, "b");
        let zero = NabCocycle::zero(&a, &b).unwrap();
        for _ in 0..5 {
            let beta = GaugeParam::random(&q, 2, 2, &mut rng);
            let c = cocycle_equivalence_transform(&zero, &beta).unwrap();
            assert!(is_valid_cocycle(&c).unwrap());
            let beta2 = GaugeParam::random(&q, 2, 2, &mut rng);
            let c2 = cocycle_equivalence_transform(&c, &beta2).unwrap();
            assert!(is_valid_cocycle(&c2).unwrap());
        }
    }

    #[test]
    fn literal_relation_matches_transform_only_in_characteristic_two() {
        let f = f2();
        let c = hand_cocycle(&f);
        let beta = GaugeParam::new(Matrix::from_rows(&f, 1, 1, vec![1]).unwrap(), 1, 1).unwrap();
        let t = cocycle_equivalence_transform(&c, &beta).unwrap();
        assert!(satisfies_literal_relation(&c, &t, &beta).unwrap());

        let q = Rationals;
        let c = NabCocycle::zero(&line(&q, "a", 1), &line(&q, "b", 0)).unwrap();
        let beta =
            GaugeParam::new(Matrix::from_rows(&q, 1, 1, vec![q.one()]).unwrap(), 1, 1).unwrap();
        let t = cocycle_equivalence_transform(&c, &beta).unwrap();
        assert!(is_valid_cocycle(&t).unwrap());
        assert!(!satisfies_literal_relation(&c, &t, &beta).unwrap());
    }

    #[test]
    fn component_table_of_valid_extension_vanishes() {
        let f = f2();
        let e = build_extension(&hand_cocycle(&f)).unwrap();
        let table = associator_component_table(&e);
        assert_eq!(table.len(), 16);
        assert!(table.values().all(MultilinearMap::is_zero));
    }

    #[test]
    fn chi_only_defect_is_minus_delta_chi() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = Algebra::zero_product(&q, "a", 1).unwrap();
        let b = nil2(&q, "b");
        let mut c = NabCocycle::zero(&a, &b).unwrap();
        c.chi = Bilinear::random(&q, 2, 2, 1, &mut rng);
        let e = build_extension(&c).unwrap();
        let bbb =
            associator_component_table(&e)[&(Pattern::parse("BBB").unwrap(), Block::A)].clone();
        let (semidirect, chi_map) = abelian_parts(&c).unwrap();
        let delta = hochschild_delta(&chi_map, &semidirect.algebra).unwrap();
        let delta_bbb =
            extract_component(&delta, &e.split, &Pattern::parse("BBB").unwrap(), Block::A).unwrap();
        assert_eq!(bbb, delta_bbb.neg());
    }

    #[test]
    fn b_valued_components_vanish_for_split_shaped_products() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let split = SplitSpace::new(2, 1);
        for _ in 0..10 {
            let raw = MultilinearMap::random(&q, 2, 3, 3, &mut rng);
            let product = MultilinearMap::from_fn(&q, 2, 3, 3, |k, idx| {
                let forced = split.block_of(k) == Block::B
                    && !(split.block_of(idx[0]) == Block::B && split.block_of(idx[1]) == Block::B);
                if forced {
                    q.zero()
                } else {
                    raw.get(k, idx).clone()
                }
            });
            let names = vec!["a0".into(), "a1".into(), "b0".into()];
            let m = SplitAlgebra {
                algebra: Algebra::from_product(names, product).unwrap(),
                split,
            };
            let table = associator_component_table(&m);
            for word in ["ABB", "AAB", "ABA", "BAA", "AAA", "BAB", "BBA"] {
                let comp = &table[&(Pattern::parse(word).unwrap(), Block::B)];
                assert!(comp.is_zero(), "{word}");
            }
        }
    }

    #[test]
    fn abelian_specialization_of_hand_cocycle() {
        let f = f2();
        let data = abelian_specialize(&hand_cocycle(&f)).unwrap();
        assert!(data.is_hochschild_cocycle());
        assert_eq!(data.phi, bil(&f, 1, 1, 1, &[1]));
        let zero = NabCocycle::zero(&line(&f, "a", 0), &line(&f, "b", 0)).unwrap();
        let z = abelian_specialize(&zero).unwrap();
        assert!(z.chi.is_zero() && z.is_hochschild_cocycle());
    }

    #[test]
    fn abelian_specialization_errors() {
        let f = f2();
        let c = NabCocycle::zero(&line(&f, "a", 1), &line(&f, "b", 1)).unwrap();
        assert_eq!(
            abelian_specialize(&c).err(),
            Some(Error::NonZeroMultiplication)
        );
        // ψ = 0 with χ(b, b) = a breaks the χ-cocycle equation
        let mut bad = hand_cocycle(&f);
        bad.psi = bil(&f, 1, 1, 1, &[0]);
        assert!(matches!(
            abelian_specialize(&bad),
            Err(Error::InvalidCocycle(_))
        ));
    }

    #[test]
    fn abelian_equivalence_changes_chi_by_a_coboundary() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = Algebra::zero_product(&q, "a", 2).unwrap();
        let b = nil2(&q, "b");
        // φ, ψ: b0 acts by a nilpotent matrix on both sides, b1 acts by zero
        let mut c = NabCocycle::zero(&a, &b).unwrap();
        c.phi = Bilinear::from_fn(&q, 2, 2, 2, |k, i, j| {
            if (k, i, j) == (1, 0, 0) {
                q.one()
            } else {
                q.zero()
            }
        });
        c.psi = Bilinear::from_fn(&q, 2, 2, 2, |k, i, j| {
            if (k, i, j) == (1, 0, 0) {
                q.from_i64(2)
            } else {
                q.zero()
            }
        });
        assert!(is_valid_cocycle(&c).unwrap());
        for _ in 0..5 {
            let beta = GaugeParam::random(&q, 2, 2, &mut rng);
            let c2 = cocycle_equivalence_transform(&c, &beta).unwrap();
            let (d1, d2) = (
                abelian_specialize(&c).unwrap(),
                abelian_specialize(&c2).unwrap(),
            );
            assert_eq!((&d1.phi, &d1.psi), (&d2.phi, &d2.psi));
            let diff = d2.chi.sub(&d1.chi).unwrap();
            assert_eq!(diff, abelian_coboundary(&c, &beta).unwrap().neg());
            assert!(d2.is_hochschild_cocycle());
        }
    }
}
