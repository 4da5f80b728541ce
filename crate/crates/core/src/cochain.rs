//! Hochschild cochains as dense coefficient tensors, with the Hochschild
//! differential and the Gerstenhaber composition products and bracket.
//!
//! A map of arity `n` from a `D`-dimensional space to a `d`-dimensional space
//! stores `T[k][i_1..i_n]`, the coefficient of the `k`-th target basis vector
//! in `f(e_{i_1}, .., e_{i_n})`, row-major with `k` outermost. Graded degree is
//! `arity - 1` throughout.

use rand::Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap<F: Field> {
    field: F,
    arity: usize,
    source_dim: usize,
    target_dim: usize,
    coeffs: Vec<F::Elem>,
}

/// Graded degree of a cochain of the given arity.
pub fn degree(arity: usize) -> i64 {
    arity as i64 - 1
}

/// Iterates over all multi-indices in `[0, dim)^len` in row-major order.
pub fn multi_indices(len: usize, dim: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.checked_pow(len as u32).unwrap_or(0);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; len];
        for slot in (0..len).rev() {
            idx[slot] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

impl<F: Field> MultilinearMap<F> {
    pub fn zero(field: &F, arity: usize, source_dim: usize, target_dim: usize) -> Self {
        let len = target_dim * source_dim.pow(arity as u32);
        MultilinearMap {
            field: field.clone(),
            arity,
            source_dim,
            target_dim,
            coeffs: vec![field.zero(); len],
        }
    }

    pub fn from_fn(
        field: &F,
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        mut entry: impl FnMut(usize, &[usize]) -> F::Elem,
    ) -> Self {
        let mut map = Self::zero(field, arity, source_dim, target_dim);
        for idx in multi_indices(arity, source_dim) {
            for k in 0..target_dim {
                let value = entry(k, &idx);
                map.set(k, &idx, value);
            }
        }
        map
    }

    /// Builds a map from its values on basis tuples.
    pub fn from_basis_values(
        field: &F,
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        mut value: impl FnMut(&[usize]) -> Vec<F::Elem>,
    ) -> Self {
        let mut map = Self::zero(field, arity, source_dim, target_dim);
        for idx in multi_indices(arity, source_dim) {
            for (k, x) in value(&idx).into_iter().enumerate() {
                map.set(k, &idx, x);
            }
        }
        map
    }

    pub fn from_coeffs(
        field: &F,
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        coeffs: Vec<F::Elem>,
    ) -> Result<Self> {
        let expected = target_dim * source_dim.pow(arity as u32);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(MultilinearMap {
            field: field.clone(),
            arity,
            source_dim,
            target_dim,
            coeffs,
        })
    }

    /// The identity map of a `dim`-dimensional space as an arity-1 cochain.
    pub fn identity(field: &F, dim: usize) -> Self {
        Self::from_fn(field, 1, dim, dim, |k, idx| {
            if k == idx[0] {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// An arity-1 map with the matrix `m` as its coefficients.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        Self::from_fn(m.field(), 1, m.cols(), m.rows(), |k, idx| {
            m.get(k, idx[0]).clone()
        })
    }

    pub fn random<R: Rng + ?Sized>(
        field: &F,
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        rng: &mut R,
    ) -> Self {
        let mut map = Self::zero(field, arity, source_dim, target_dim);
        for c in map.coeffs.iter_mut() {
            *c = field.random(rng);
        }
        map
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        degree(self.arity)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    fn offset(&self, k: usize, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.arity);
        idx.iter().fold(k, |acc, &i| acc * self.source_dim + i)
    }

    pub fn get(&self, k: usize, idx: &[usize]) -> &F::Elem {
        &self.coeffs[self.offset(k, idx)]
    }

    pub fn set(&mut self, k: usize, idx: &[usize], value: F::Elem) {
        let o = self.offset(k, idx);
        self.coeffs[o] = value;
    }

    /// `f(e_{i_1}, .., e_{i_n})` as a target vector.
    pub fn column(&self, idx: &[usize]) -> Vec<F::Elem> {
        (0..self.target_dim)
            .map(|k| self.get(k, idx).clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !self.field.is_zero(c))
            .count()
    }

    /// Evaluates on arbitrary vectors by multilinear expansion.
    pub fn apply(&self, args: &[&[F::Elem]]) -> Result<Vec<F::Elem>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        for a in args {
            if a.len() != self.source_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.source_dim,
                    found: a.len(),
                });
            }
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.target_dim];
        'outer: for idx in multi_indices(self.arity, self.source_dim) {
            let mut weight = f.one();
            for (slot, &i) in idx.iter().enumerate() {
                let x = &args[slot][i];
                if f.is_zero(x) {
                    continue 'outer;
                }
                weight = f.mul(&weight, x);
            }
            for (k, o) in out.iter_mut().enumerate() {
                f.add_mul(o, &weight, self.get(k, &idx));
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.source_dim != other.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                found: other.source_dim,
            });
        }
        if self.target_dim != other.target_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim,
                found: other.target_dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(MultilinearMap {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        MultilinearMap {
            coeffs: self.coeffs.iter().map(|c| f.mul(c, s)).collect(),
            ..self.clone()
        }
    }

    /// `x -> f(m_1 x_1, .., m_n x_n)`; each `m_s` maps the new source space
    /// into the current one.
    pub fn precompose(&self, slot_maps: &[&Matrix<F>]) -> Result<Self> {
        if slot_maps.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: slot_maps.len(),
            });
        }
        let new_dim = slot_maps.first().map_or(self.source_dim, |m| m.cols());
        for m in slot_maps {
            if m.rows() != self.source_dim || m.cols() != new_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.source_dim,
                    found: m.rows(),
                });
            }
        }
        let columns: Vec<Vec<Vec<F::Elem>>> = slot_maps
            .iter()
            .map(|m| (0..new_dim).map(|j| m.column(j)).collect())
            .collect();
        let mut out = Self::zero(&self.field, self.arity, new_dim, self.target_dim);
        for idx in multi_indices(self.arity, new_dim) {
            let args: Vec<&[F::Elem]> = idx
                .iter()
                .enumerate()
                .map(|(slot, &j)| columns[slot][j].as_slice())
                .collect();
            for (k, x) in self.apply(&args)?.into_iter().enumerate() {
                out.set(k, &idx, x);
            }
        }
        Ok(out)
    }

    /// `x -> m f(x)`
    pub fn postcompose(&self, m: &Matrix<F>) -> Result<Self> {
        if m.cols() != self.target_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim,
                found: m.cols(),
            });
        }
        let mut out = Self::zero(&self.field, self.arity, self.source_dim, m.rows());
        for idx in multi_indices(self.arity, self.source_dim) {
            for (k, x) in m.apply(&self.column(&idx))?.into_iter().enumerate() {
                out.set(k, &idx, x);
            }
        }
        Ok(out)
    }
}

/// Hochschild differential of `f` with coefficients in the ambient algebra
/// acting on itself:
///
/// `δf(a_1..a_{n+1}) = a_1 f(a_2..) + Σ_i (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(..a_n) a_{n+1}`.
pub fn hochschild_delta<F: Field>(
    f: &MultilinearMap<F>,
    amb: &Algebra<F>,
) -> Result<MultilinearMap<F>> {
    let dim = amb.dim();
    for found in [f.source_dim(), f.target_dim()] {
        if found != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found,
            });
        }
    }
    let field = f.field();
    let n = f.arity();
    let basis = |i: usize| amb.basis_vector(i);
    let mut out = MultilinearMap::zero(field, n + 1, dim, dim);
    for idx in multi_indices(n + 1, dim) {
        let mut value = amb.multiply(&basis(idx[0]), &f.column(&idx[1..]))?;
        for i in 1..=n {
            let merged = amb.product().column(&[idx[i - 1], idx[i]]);
            let mut args: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
            args.extend(idx[..i - 1].iter().map(|&j| basis(j)));
            args.push(merged);
            args.extend(idx[i + 1..].iter().map(|&j| basis(j)));
            let refs: Vec<&[F::Elem]> = args.iter().map(Vec::as_slice).collect();
            let term = f.apply(&refs)?;
            let s = field.sign(i as i64);
            for (v, t) in value.iter_mut().zip(&term) {
                field.add_mul(v, &s, t);
            }
        }
        let last = amb.multiply(&f.column(&idx[..n]), &basis(idx[n]))?;
        let s = field.sign(n as i64 + 1);
        for (v, t) in value.iter_mut().zip(&last) {
            field.add_mul(v, &s, t);
        }
        for (k, x) in value.into_iter().enumerate() {
            out.set(k, &idx, x);
        }
    }
    Ok(out)
}

/// `f ∘_i g = f(id^{i-1} ⊗ g ⊗ id^{m-i+1})`, with `i` 1-based.
pub fn circ_i<F: Field>(
    f: &MultilinearMap<F>,
    g: &MultilinearMap<F>,
    i: usize,
) -> Result<MultilinearMap<F>> {
    if i == 0 || i > f.arity() {
        return Err(Error::SlotOutOfRange {
            slot: i,
            arity: f.arity(),
        });
    }
    let dim = f.source_dim();
    for found in [g.source_dim(), g.target_dim()] {
        if found != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found,
            });
        }
    }
    let field = f.field();
    let (fa, ga) = (f.arity(), g.arity());
    let arity = fa + ga - 1;
    let mut out = MultilinearMap::zero(field, arity, dim, f.target_dim());
    let mut f_idx = vec![0; fa];
    for idx in multi_indices(arity, dim) {
        let inner = g.column(&idx[i - 1..i - 1 + ga]);
        f_idx[..i - 1].copy_from_slice(&idx[..i - 1]);
        f_idx[i..].copy_from_slice(&idx[i - 1 + ga..]);
        for k in 0..f.target_dim() {
            let mut acc = field.zero();
            for (t, x) in inner.iter().enumerate() {
                f_idx[i - 1] = t;
                field.add_mul(&mut acc, f.get(k, &f_idx), x);
            }
            out.set(k, &idx, acc);
        }
    }
    Ok(out)
}

/// `f ∘ g = Σ_{i=1}^{m+1} (-1)^{n(i+1)} f ∘_i g` with `n` the degree of `g`.
pub fn circ<F: Field>(f: &MultilinearMap<F>, g: &MultilinearMap<F>) -> Result<MultilinearMap<F>> {
    if f.arity() + g.arity() == 0 {
        return Err(Error::NegativeArity);
    }
    let dim = f.source_dim();
    for found in [g.source_dim(), g.target_dim()] {
        if found != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found,
            });
        }
    }
    let field = f.field();
    let n = g.degree();
    let mut acc = MultilinearMap::zero(field, f.arity() + g.arity() - 1, dim, f.target_dim());
    for i in 1..=f.arity() {
        let term = circ_i(f, g, i)?;
        acc = acc.add(&term.scale(&field.sign(n * (i as i64 + 1))))?;
    }
    Ok(acc)
}

/// Gerstenhaber bracket `[f, g] = f ∘ g - (-1)^{mn} g ∘ f`.
pub fn gerstenhaber_bracket<F: Field>(
    f: &MultilinearMap<F>,
    g: &MultilinearMap<F>,
) -> Result<MultilinearMap<F>> {
    if f.source_dim() != f.target_dim() || g.source_dim() != g.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.source_dim(),
            found: f.target_dim(),
        });
    }
    let field = f.field();
    let (m, n) = (f.degree(), g.degree());
    let fg = circ(f, g)?;
    let gf = circ(g, f)?;
    fg.sub(&gf.scale(&field.sign(m * n)))
}

/// The bracket form of the Hochschild differential, `(-1)^{n-1} [m, f]` with
/// `n` the arity of `f`. Agrees with [`hochschild_delta`] when `m` is
/// associative.
pub fn delta_as_bracket<F: Field>(
    f: &MultilinearMap<F>,
    m: &MultilinearMap<F>,
) -> Result<MultilinearMap<F>> {
    if m.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: m.arity(),
        });
    }
    let b = gerstenhaber_bracket(m, f)?;
    Ok(b.scale(&f.field().sign(f.degree())))
}

/// The differential `d f = [m, f]` of the dg Lie algebra of shifted cochains.
///
/// It differs from the Hochschild differential by the sign `(-1)^{deg f}`; this
/// is the version that satisfies `d[f,g] = [df,g] + (-1)^{|f|}[f,dg]`, and it
/// makes `d c + c ∘ c` the associator defect of `m + c`.
pub fn bracket_differential<F: Field>(
    f: &MultilinearMap<F>,
    m: &MultilinearMap<F>,
) -> Result<MultilinearMap<F>> {
    if m.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: m.arity(),
        });
    }
    gerstenhaber_bracket(m, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn idempotent_line() -> Algebra<Rationals> {
        Algebra::from_table(&Rationals, vec!["e".into()], |_, _| vec![Rationals.one()]).unwrap()
    }

    #[test]
    fn multi_indices_row_major() {
        let all: Vec<_> = multi_indices(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(multi_indices(0, 3).count(), 1);
    }

    #[test]
    fn delta_of_zero_is_zero() {
        let alg = idempotent_line();
        for arity in 0..3 {
            let f = MultilinearMap::zero(&Rationals, arity, 1, 1);
            assert!(hochschild_delta(&f, &alg).unwrap().is_zero());
        }
    }

    #[test]
    fn delta_of_identity_on_idempotent() {
        // δ id (e, e) = e id(e) - id(e e) + id(e) e = e
        let alg = idempotent_line();
        let d = hochschild_delta(&MultilinearMap::identity(&Rationals, 1), &alg).unwrap();
        assert_eq!(d.column(&[0, 0]), vec![Rationals.one()]);
    }

    #[test]
    fn circ_i_definitions() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let g = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let h = circ_i(&f, &g, 1).unwrap();
        for idx in multi_indices(3, 2) {
            let inner = g.column(&idx[..2]);
            let e = Algebra::<Rationals>::unit_vector(&q, 2, idx[2]);
            assert_eq!(h.column(&idx), f.apply(&[&inner, &e]).unwrap());
        }
        let id = MultilinearMap::identity(&q, 2);
        assert_eq!(circ_i(&id, &g, 1).unwrap(), g);
        assert!(matches!(
            circ_i(&f, &g, 3),
            Err(Error::SlotOutOfRange { .. })
        ));
        assert!(matches!(
            circ_i(&f, &g, 0),
            Err(Error::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn circ_two_on_idempotent_line() {
        let alg = idempotent_line();
        let m = alg.product();
        assert_eq!(
            circ_i(m, m, 2).unwrap().column(&[0, 0, 0]),
            vec![Rationals.one()]
        );
        // m∘m = m∘_1 m - m∘_2 m = associator = 0
        assert!(circ(m, m).unwrap().is_zero());
    }

    #[test]
    fn circ_degree_zero_has_no_signs() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = MultilinearMap::random(&q, 3, 2, 2, &mut rng);
        let g = MultilinearMap::random(&q, 1, 2, 2, &mut rng);
        let mut sum = MultilinearMap::zero(&q, 3, 2, 2);
        for i in 1..=3 {
            sum = sum.add(&circ_i(&f, &g, i).unwrap()).unwrap();
        }
        assert_eq!(circ(&f, &g).unwrap(), sum);
    }

    #[test]
    fn circ_arity_two_sign_table() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let g = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let expected = circ_i(&f, &g, 1)
            .unwrap()
            .sub(&circ_i(&f, &g, 2).unwrap())
            .unwrap();
        assert_eq!(circ(&f, &g).unwrap(), expected);
    }

    #[test]
    fn self_bracket_of_odd_element_doubles() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let ff = circ(&f, &f).unwrap();
        assert_eq!(gerstenhaber_bracket(&f, &f).unwrap(), ff.add(&ff).unwrap());
    }

    fn twisted<F: Field>(field: &F) -> Algebra<F> {
        // e0 e0 = e1, e1 e0 = e0
        let (o, z) = (field.one(), field.zero());
        Algebra::from_table(field, vec!["e0".into(), "e1".into()], |i, j| match (i, j) {
            (0, 0) => vec![z.clone(), o.clone()],
            (1, 0) => vec![o.clone(), z.clone()],
            _ => vec![z.clone(), z.clone()],
        })
        .unwrap()
    }

    fn square_zero<F: Field>(field: &F) -> Algebra<F> {
        // e0 e0 = e1, all other products zero
        let (o, z) = (field.one(), field.zero());
        Algebra::from_table(field, vec!["e0".into(), "e1".into()], |i, j| match (i, j) {
            (0, 0) => vec![z.clone(), o.clone()],
            _ => vec![z.clone(), z.clone()],
        })
        .unwrap()
    }

    #[test]
    fn product_bracket_detects_associativity() {
        let f3 = PrimeField::new(3).unwrap();
        let bad = twisted(&f3);
        assert!(!bad.is_associative());
        assert!(!gerstenhaber_bracket(bad.product(), bad.product())
            .unwrap()
            .is_zero());
        let good = square_zero(&f3);
        assert!(good.is_associative());
        assert!(gerstenhaber_bracket(good.product(), good.product())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn self_composition_detects_associativity_in_characteristic_two() {
        // [m, m] = 2 (m ∘ m) vanishes identically over F2; m ∘ m is the associator
        let f2 = PrimeField::new(2).unwrap();
        let bad = twisted(&f2);
        let m = bad.product();
        assert!(gerstenhaber_bracket(m, m).unwrap().is_zero());
        assert_eq!(circ(m, m).unwrap(), bad.associator_map());
        assert!(!circ(m, m).unwrap().is_zero());
        let good = square_zero(&f2);
        assert!(circ(good.product(), good.product()).unwrap().is_zero());
    }

    #[test]
    fn delta_as_bracket_arity_two_is_negated_bracket() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let f = MultilinearMap::random(&q, 2, 2, 2, &mut rng);
        let expected = gerstenhaber_bracket(&m, &f).unwrap().neg();
        assert_eq!(delta_as_bracket(&f, &m).unwrap(), expected);
        let zero = MultilinearMap::zero(&q, 2, 2, 2);
        assert!(delta_as_bracket(&zero, &m).unwrap().is_zero());
        let unary = MultilinearMap::random(&q, 1, 2, 2, &mut rng);
        assert!(matches!(
            delta_as_bracket(&f, &unary),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn arity_zero_bookkeeping() {
        let q = Rationals;
        let c = MultilinearMap::from_coeffs(&q, 0, 2, 2, vec![q.one(), q.zero()]).unwrap();
        assert_eq!(circ(&c, &c), Err(Error::NegativeArity));
        let alg = idempotent_line();
        let c1 = MultilinearMap::from_coeffs(&q, 0, 1, 1, vec![q.one()]).unwrap();
        // δc(a) = a c - c a vanishes on a commutative algebra
        assert!(hochschild_delta(&c1, &alg).unwrap().is_zero());
        assert!(delta_as_bracket(&c1, alg.product()).unwrap().is_zero());
    }
}
