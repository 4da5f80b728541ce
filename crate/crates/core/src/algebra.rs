//! Finite-dimensional algebras presented by structure constants.

use std::collections::BTreeMap;

use crate::cochain::{multi_indices, MultilinearMap};
use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse structure constants: `(i, j)` to the nonzero `(k, c_{ij}^k)`.
pub type SparseTable<E> = BTreeMap<(usize, usize), Vec<(usize, E)>>;

/// A finite-dimensional algebra over `F` with basis `e_0..e_{n-1}` and
/// product `e_i e_j = Σ_k c_{ij}^k e_k`.
///
/// The product is not required to be associative; see [`Algebra::is_associative`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    basis: Vec<String>,
    product: MultilinearMap<F>,
}

/// An associator witness: basis triple and the nonzero value `(xy)z - x(yz)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatorWitness<F: Field> {
    pub triple: [usize; 3],
    pub value: Vec<F::Elem>,
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from a product given on basis pairs.
    pub fn from_table(
        field: &F,
        basis: Vec<String>,
        mut table: impl FnMut(usize, usize) -> Vec<F::Elem>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut product = MultilinearMap::zero(field, 2, dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = table(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                for (k, x) in v.into_iter().enumerate() {
                    product.set(k, &[i, j], x);
                }
            }
        }
        Self::from_product(basis, product)
    }

    /// Builds an algebra from sparse structure constants; unlisted pairs are zero.
    pub fn from_sparse(
        field: &F,
        basis: Vec<String>,
        products: &SparseTable<F::Elem>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut product = MultilinearMap::zero(field, 2, dim, dim);
        for (&(i, j), terms) in products {
            for &index in [i, j].iter() {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            for (k, c) in terms {
                if *k >= dim {
                    return Err(Error::IndexOutOfRange { index: *k, dim });
                }
                let acc = field.add(product.get(*k, &[i, j]), c);
                product.set(*k, &[i, j], acc);
            }
        }
        Self::from_product(basis, product)
    }

    pub fn from_product(basis: Vec<String>, product: MultilinearMap<F>) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &basis {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate basis name {name:?}"
                )));
            }
        }
        if product.arity() != 2 || product.source_dim() != dim || product.target_dim() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "product must be a bilinear map on a {dim}-dimensional space"
            )));
        }
        Ok(Algebra { basis, product })
    }

    /// The algebra with zero multiplication on `dim` basis vectors named `prefix0..`.
    pub fn zero_product(field: &F, prefix: &str, dim: usize) -> Result<Self> {
        Self::from_table(field, default_names(prefix, dim), |_, _| {
            vec![field.zero(); dim]
        })
    }

    /// `dim` orthogonal idempotents: `e_i e_i = e_i`, other products zero.
    pub fn diagonal_idempotents(field: &F, prefix: &str, dim: usize) -> Result<Self> {
        Self::from_table(field, default_names(prefix, dim), |i, j| {
            let mut v = vec![field.zero(); dim];
            if i == j {
                v[i] = field.one();
            }
            v
        })
    }

    pub fn field(&self) -> &F {
        self.product.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// The product as an arity-2 cochain.
    pub fn product(&self) -> &MultilinearMap<F> {
        &self.product
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.product.column(&[i, j])
    }

    /// Nonzero structure constants, `(i, j) -> [(k, c_{ij}^k)]`.
    pub fn sparse_table(&self) -> SparseTable<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for idx in multi_indices(2, self.dim()) {
            let terms: Vec<_> = self
                .structure_constants(idx[0], idx[1])
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .collect();
            if !terms.is_empty() {
                out.insert((idx[0], idx[1]), terms);
            }
        }
        out
    }

    pub fn unit_vector(field: &F, dim: usize, i: usize) -> Vec<F::Elem> {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        v
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        Self::unit_vector(self.field(), self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field().zero(); self.dim()]
    }

    fn check_vector(&self, v: &[F::Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        self.product.apply(&[x, y])
    }

    /// `(xy)z - x(yz)`
    pub fn associator(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let left = self.multiply(&self.multiply(x, y)?, z)?;
        let right = self.multiply(x, &self.multiply(y, z)?)?;
        let f = self.field();
        Ok(left.iter().zip(&right).map(|(a, b)| f.sub(a, b)).collect())
    }

    /// The associator as an arity-3 map, evaluated on basis triples.
    pub fn associator_map(&self) -> MultilinearMap<F> {
        let n = self.dim();
        MultilinearMap::from_basis_values(self.field(), 3, n, n, |idx| {
            self.associator(
                &self.basis_vector(idx[0]),
                &self.basis_vector(idx[1]),
                &self.basis_vector(idx[2]),
            )
            .expect("basis vectors have the right length")
        })
    }

    /// First basis triple (in row-major order) with nonzero associator.
    pub fn associativity_witness(&self) -> Option<AssociatorWitness<F>> {
        let f = self.field();
        multi_indices(3, self.dim()).find_map(|idx| {
            let value = self
                .associator(
                    &self.basis_vector(idx[0]),
                    &self.basis_vector(idx[1]),
                    &self.basis_vector(idx[2]),
                )
                .expect("basis vectors have the right length");
            if value.iter().all(|c| f.is_zero(c)) {
                None
            } else {
                Some(AssociatorWitness {
                    triple: [idx[0], idx[1], idx[2]],
                    value,
                })
            }
        })
    }

    /// Associativity on all basis triples, which suffices by trilinearity.
    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn has_zero_product(&self) -> bool {
        self.product.is_zero()
    }
}

fn default_names(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("{prefix}{i}")).collect()
}

/// Which summand of `A ⊕ B` a basis vector or tensor slot belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Block {
    A,
    B,
}

/// Decomposition of a space as `A ⊕ B`; the first `a_dim` basis vectors span
/// `A` and the remaining `b_dim` span `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpace {
    pub a_dim: usize,
    pub b_dim: usize,
}

impl SplitSpace {
    pub fn new(a_dim: usize, b_dim: usize) -> Self {
        SplitSpace { a_dim, b_dim }
    }

    pub fn dim(&self) -> usize {
        self.a_dim + self.b_dim
    }

    pub fn block_of(&self, index: usize) -> Block {
        if index < self.a_dim {
            Block::A
        } else {
            Block::B
        }
    }

    pub fn a_indices(&self) -> std::ops::Range<usize> {
        0..self.a_dim
    }

    pub fn b_indices(&self) -> std::ops::Range<usize> {
        self.a_dim..self.dim()
    }

    pub fn indices(&self, block: Block) -> std::ops::Range<usize> {
        match block {
            Block::A => self.a_indices(),
            Block::B => self.b_indices(),
        }
    }

    /// Index of the `i`-th basis vector of `B` in the total space.
    pub fn b_index(&self, i: usize) -> usize {
        self.a_dim + i
    }

    pub fn embed_a<F: Field>(&self, field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = a.to_vec();
        v.resize(self.dim(), field.zero());
        v
    }

    pub fn embed_b<F: Field>(&self, field: &F, b: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![field.zero(); self.a_dim];
        v.extend_from_slice(b);
        v
    }

    pub fn a_part<F: Field>(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        v[..self.a_dim].to_vec()
    }

    pub fn b_part<F: Field>(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        v[self.a_dim..].to_vec()
    }
}

/// An algebra on a split space `A ⊕ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    pub split: SplitSpace,
}

/// `A ⊕ B` with product `m_A ⊕ m_B` and vanishing cross terms.
pub fn direct_sum_space<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<SplitAlgebra<F>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(
            a.field().spec().to_string(),
            b.field().spec().to_string(),
        ));
    }
    let split = SplitSpace::new(a.dim(), b.dim());
    let field = a.field();
    let mut basis = a.basis_names().to_vec();
    for name in b.basis_names() {
        let mut candidate = name.clone();
        while basis.contains(&candidate) {
            candidate.push('\'');
        }
        basis.push(candidate);
    }
    let algebra = Algebra::from_table(field, basis, |i, j| {
        match (split.block_of(i), split.block_of(j)) {
            (Block::A, Block::A) => split.embed_a(field, &a.structure_constants(i, j)),
            (Block::B, Block::B) => split.embed_b(
                field,
                &b.structure_constants(i - split.a_dim, j - split.a_dim),
            ),
            _ => vec![field.zero(); split.dim()],
        }
    })?;
    Ok(SplitAlgebra { algebra, split })
}
