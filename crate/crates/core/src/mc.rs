//! Maurer–Cartan residual and gauge action on `L`.
//!
//! The residual of an arity-2 `x` is `d x + x ∘ x` with `d = [m_A + m_B, ·]`.
//! For an associative base product this is exactly the associator of
//! `m_A + m_B + x` minus that of the base, in every characteristic. When 2 is
//! invertible it is `d x + ½[x, x]`.

use crate::algebra::{Block, SplitSpace};
use crate::cochain::{circ, MultilinearMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::nonabelian::GaugeParam;
use crate::split::{extract_component, LElement, Pattern, SplitDgla};

/// Maximum number of `ad_β` iterations before declaring `β` non-nilpotent.
pub const NILPOTENCY_CAP: usize = 8;

/// Result of the truncated gauge series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeSeries<F: Field> {
    pub value: LElement<F>,
    /// Least `k` with `(ad_β)^k x = 0`.
    pub exp_order: usize,
    /// Least `k` with `(ad_β)^k dβ = 0`.
    pub g_order: usize,
}

fn projection<F: Field>(field: &F, split: &SplitSpace, block: Block) -> Matrix<F> {
    let mut m = Matrix::zeros(field, split.dim(), split.dim());
    for i in split.indices(block) {
        m.set(i, i, field.one());
    }
    m
}

fn factorial_inverse<F: Field>(field: &F, k: usize) -> Result<F::Elem> {
    let mut acc = field.one();
    for i in 2..=k {
        acc = field.mul(&acc, &field.from_i64(i as i64));
    }
    field
        .inv(&acc)
        .map_err(|_| Error::UnsupportedCharacteristic(field.characteristic()))
}

impl<F: Field> SplitDgla<F> {
    fn require_arity_two(&self, x: &LElement<F>) -> Result<()> {
        if x.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: x.arity(),
            });
        }
        Ok(())
    }

    fn require_gauge_shape(&self, beta: &GaugeParam<F>) -> Result<()> {
        let split = self.split();
        if (beta.a_dim(), beta.b_dim()) != (split.a_dim, split.b_dim) {
            return Err(Error::DimensionMismatch {
                expected: split.a_dim * split.b_dim,
                found: beta.a_dim() * beta.b_dim(),
            });
        }
        Ok(())
    }

    /// `d x + x ∘ x` for arity-2 `x ∈ L`.
    pub fn mc_residual(&self, x: &LElement<F>) -> Result<LElement<F>> {
        self.require_arity_two(x)?;
        let dx = self.l_differential(x)?;
        let sq = circ(x.map(), x.map())?;
        self.element(dx.map().add(&sq)?)
    }

    pub fn is_mc(&self, x: &LElement<F>) -> Result<bool> {
        Ok(self.mc_residual(x)?.is_zero())
    }

    /// The gauge transform of a cocycle-shaped `x` (zero `AA` component):
    ///
    /// `x'(e1, e2) = x(e1, e2) − x(e1, β e2) − x(β e1, e2) − β(e1) a2 − a1 β(e2)
    ///  + β(e1 e2) + β(e1) β(e2)`,
    ///
    /// where `β` is extended by zero on `A`, `a_i` is the A-part of `e_i`, and
    /// products are in `m_A + m_B`. No division occurs.
    pub fn gauge_closed_form(&self, x: &LElement<F>, beta: &GaugeParam<F>) -> Result<LElement<F>> {
        self.require_arity_two(x)?;
        self.require_gauge_shape(beta)?;
        let split = self.split();
        let aa = Pattern::parse("AA").expect("static pattern");
        if !x.component(&aa)?.is_zero() {
            return Err(Error::NotCocycleShaped);
        }
        let f = self.field();
        let id = Matrix::identity(f, split.dim());
        let pa = projection(f, &split, Block::A);
        let bh = beta.to_l();
        let bh = Matrix::from_columns(
            f,
            split.dim(),
            &(0..split.dim())
                .map(|j| bh.map().column(&[j]))
                .collect::<Vec<_>>(),
        )?;
        let m0 = self.base_product();
        let xm = x.map();
        let mut out = xm.clone();
        for term in [
            xm.precompose(&[&id, &bh])?,
            xm.precompose(&[&bh, &id])?,
            m0.precompose(&[&bh, &pa])?,
            m0.precompose(&[&pa, &bh])?,
        ] {
            out = out.sub(&term)?;
        }
        for term in [m0.postcompose(&bh)?, m0.precompose(&[&bh, &bh])?] {
            out = out.add(&term)?;
        }
        self.element(out)
    }

    /// `exp(ad_β) x + g_β` with `g_β = −Σ_n (ad_β)^n dβ / (n+1)!`, summed until
    /// the iterates vanish. Refuses characteristic 2 and any coefficient whose
    /// factorial is not invertible.
    pub fn gauge_series(&self, x: &LElement<F>, beta: &GaugeParam<F>) -> Result<GaugeSeries<F>> {
        self.require_arity_two(x)?;
        self.require_gauge_shape(beta)?;
        let f = self.field();
        if f.characteristic() == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        let b = beta.to_l();
        let split = self.split();

        let (exp_sum, exp_order) = self.ad_series(&b, x.clone(), |k| factorial_inverse(f, k))?;
        let db = self.l_differential(&b)?;
        let (g_sum, g_order) =
            self.ad_series(&b, db, |k| Ok(f.neg(&factorial_inverse(f, k + 1)?)))?;
        let value = exp_sum.add(&g_sum)?;
        debug_assert_eq!(*value.split(), split);
        Ok(GaugeSeries {
            value,
            exp_order,
            g_order,
        })
    }

    /// `Σ_k coeff(k) (ad_β)^k y` and the first `k` with a zero iterate.
    fn ad_series(
        &self,
        beta: &LElement<F>,
        y: LElement<F>,
        coeff: impl Fn(usize) -> Result<F::Elem>,
    ) -> Result<(LElement<F>, usize)> {
        let mut acc = LElement::zero(self.field(), y.arity(), self.split());
        let mut term = y;
        for k in 0..=NILPOTENCY_CAP {
            if term.is_zero() {
                return Ok((acc, k));
            }
            acc = acc.add(&term.scale(&coeff(k)?))?;
            term = self.l_bracket(beta, &term)?;
        }
        Err(Error::NotNilpotent(NILPOTENCY_CAP))
    }

    /// `x2 == gauge_closed_form(x, β)`.
    pub fn check_gauge_witness(
        &self,
        x: &LElement<F>,
        x2: &LElement<F>,
        beta: &GaugeParam<F>,
    ) -> Result<bool> {
        Ok(self.gauge_closed_form(x, beta)? == *x2)
    }
}

/// The `B ⊗ B -> A` part of an arity-2 element, embedded.
pub fn bb_component<F: Field>(x: &LElement<F>) -> MultilinearMap<F> {
    let bb = Pattern::parse("BB").expect("static pattern");
    extract_component(x.map(), x.split(), &bb, Block::A).expect("arity 2")
}
