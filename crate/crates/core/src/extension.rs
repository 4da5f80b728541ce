//! Extensions `0 -> A -> E -> B -> 0` presented by matrices, their sections,
//! and the cocycles sections induce.

use crate::algebra::{Algebra, SplitAlgebra};
use crate::cochain::multi_indices;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;
use crate::nonabelian::{Bilinear, GaugeParam, NabCocycle};

/// `iota: A -> E` is `dim E x dim A`, `p: E -> B` is `dim B x dim E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPresentation<F: Field> {
    pub a: Algebra<F>,
    pub b: Algebra<F>,
    pub e: Algebra<F>,
    pub iota: Matrix<F>,
    pub p: Matrix<F>,
}

fn shape_err(expected: usize, found: usize) -> Error {
    Error::DimensionMismatch { expected, found }
}

impl<F: Field> ExtensionPresentation<F> {
    pub fn new(
        a: Algebra<F>,
        b: Algebra<F>,
        e: Algebra<F>,
        iota: Matrix<F>,
        p: Matrix<F>,
    ) -> Result<Self> {
        for other in [a.field(), b.field(), iota.field(), p.field()] {
            if other != e.field() {
                return Err(Error::FieldMismatch(
                    e.field().spec().to_string(),
                    other.spec().to_string(),
                ));
            }
        }
        if iota.rows() != e.dim() || iota.cols() != a.dim() {
            return Err(shape_err(e.dim() * a.dim(), iota.rows() * iota.cols()));
        }
        if p.rows() != b.dim() || p.cols() != e.dim() {
            return Err(shape_err(b.dim() * e.dim(), p.rows() * p.cols()));
        }
        Ok(ExtensionPresentation { a, b, e, iota, p })
    }

    /// The split algebra with `iota = [I; 0]` and `p = [0 I]`.
    pub fn from_split(ext: &SplitAlgebra<F>, a: &Algebra<F>, b: &Algebra<F>) -> Result<Self> {
        let f = ext.algebra.field();
        let split = ext.split;
        if (split.a_dim, split.b_dim) != (a.dim(), b.dim()) {
            return Err(shape_err(split.dim(), a.dim() + b.dim()));
        }
        let mut iota = Matrix::zeros(f, split.dim(), split.a_dim);
        for i in 0..split.a_dim {
            iota.set(i, i, f.one());
        }
        let mut p = Matrix::zeros(f, split.b_dim, split.dim());
        for j in 0..split.b_dim {
            p.set(j, split.b_index(j), f.one());
        }
        Self::new(a.clone(), b.clone(), ext.algebra.clone(), iota, p)
    }

    /// Reads `A` and `B` off `E`: `A` through the inclusion, `B` through
    /// any linear lift of `p`.
    pub fn induced(e: Algebra<F>, iota: Matrix<F>, p: Matrix<F>) -> Result<Self> {
        let f = e.field().clone();
        if iota.rows() != e.dim() || p.cols() != e.dim() {
            return Err(shape_err(e.dim(), iota.rows().max(p.cols())));
        }
        if iota.rank() != iota.cols() {
            return Err(Error::InvalidExtension("iota is not injective".into()));
        }
        let a_names = (0..iota.cols()).map(|i| format!("a{i}")).collect();
        let mut a_err = None;
        let a = Algebra::from_table(&f, a_names, |i, j| {
            let prod = e
                .multiply(&iota.column(i), &iota.column(j))
                .expect("E-vectors");
            match iota.solve(&prod).expect("E-vector") {
                Some(v) => v,
                None => {
                    a_err = Some(Error::InvalidExtension(
                        "iota(A) is not a subalgebra".into(),
                    ));
                    vec![f.zero(); iota.cols()]
                }
            }
        })?;
        if let Some(err) = a_err {
            return Err(err);
        }
        let lifts = (0..p.rows())
            .map(|j| {
                let unit = Algebra::unit_vector(&f, p.rows(), j);
                p.solve(&unit)?
                    .ok_or_else(|| Error::InvalidExtension("p is not surjective".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let b_names = (0..p.rows()).map(|j| format!("b{j}")).collect();
        let b = Algebra::from_table(&f, b_names, |i, j| {
            p.apply(&e.multiply(&lifts[i], &lifts[j]).expect("E-vectors"))
                .expect("E-vector")
        })?;
        Self::new(a, b, e, iota, p)
    }

    pub fn field(&self) -> &F {
        self.e.field()
    }

    fn pull_back(&self, v: &[F::Elem], what: &str) -> Result<Vec<F::Elem>> {
        self.iota
            .solve(v)?
            .ok_or_else(|| Error::NotInImage(what.to_string()))
    }
}

/// Outcome of [`verify_extension`]; `failures` describes every failed check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionDiagnostics {
    pub injective: bool,
    pub surjective: bool,
    pub exact: bool,
    pub iota_morphism: bool,
    pub p_morphism: bool,
    pub failures: Vec<String>,
}

impl ExtensionDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.injective && self.surjective && self.exact && self.iota_morphism && self.p_morphism
    }
}

fn vec_eq<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> bool {
    x.iter().zip(y).all(|(a, b)| f.is_zero(&f.sub(a, b)))
}

pub fn verify_extension<F: Field>(ext: &ExtensionPresentation<F>) -> ExtensionDiagnostics {
    let f = ext.field();
    let mut d = ExtensionDiagnostics::default();
    let (ra, rp) = (ext.iota.rank(), ext.p.rank());
    d.injective = ra == ext.a.dim();
    if !d.injective {
        d.failures
            .push(format!("iota has rank {ra} < dim A = {}", ext.a.dim()));
    }
    d.surjective = rp == ext.b.dim();
    if !d.surjective {
        d.failures
            .push(format!("p has rank {rp} < dim B = {}", ext.b.dim()));
    }
    let composite_zero = ext
        .p
        .compose(&ext.iota)
        .map(|m| m.is_zero())
        .unwrap_or(false);
    d.exact = composite_zero && ra + rp == ext.e.dim();
    if !composite_zero {
        d.failures.push("p o iota != 0".into());
    } else if !d.exact {
        d.failures.push(format!(
            "image(iota) has dim {ra} but ker(p) has dim {}",
            ext.e.dim() - rp
        ));
    }
    d.iota_morphism = true;
    for idx in multi_indices(2, ext.a.dim()) {
        let (i, j) = (idx[0], idx[1]);
        let lhs = ext
            .iota
            .apply(&ext.a.structure_constants(i, j))
            .expect("A-vector");
        let rhs = ext
            .e
            .multiply(&ext.iota.column(i), &ext.iota.column(j))
            .expect("E-vectors");
        if !vec_eq(f, &lhs, &rhs) {
            d.iota_morphism = false;
            d.failures
                .push(format!("iota(a{i} a{j}) != iota(a{i}) iota(a{j})"));
            break;
        }
    }
    d.p_morphism = true;
    for idx in multi_indices(2, ext.e.dim()) {
        let (i, j) = (idx[0], idx[1]);
        let lhs = ext
            .p
            .apply(&ext.e.structure_constants(i, j))
            .expect("E-vector");
        let rhs = ext
            .b
            .multiply(&ext.p.column(i), &ext.p.column(j))
            .expect("B-vectors");
        if !vec_eq(f, &lhs, &rhs) {
            d.p_morphism = false;
            d.failures.push(format!("p(e{i} e{j}) != p(e{i}) p(e{j})"));
            break;
        }
    }
    d
}

/// A linear map `s: B -> E` with `p s = id`, as a `dim E x dim B` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section<F: Field> {
    pub s: Matrix<F>,
}

impl<F: Field> Section<F> {
    pub fn new(ext: &ExtensionPresentation<F>, s: Matrix<F>) -> Result<Self> {
        if s.rows() != ext.e.dim() || s.cols() != ext.b.dim() {
            return Err(shape_err(ext.e.dim() * ext.b.dim(), s.rows() * s.cols()));
        }
        if ext.p.compose(&s)? != Matrix::identity(ext.field(), ext.b.dim()) {
            return Err(Error::InvalidSection);
        }
        Ok(Section { s })
    }

    pub fn apply(&self, b: &[F::Elem]) -> Vec<F::Elem> {
        self.s.apply(b).expect("B-vector")
    }
}

/// The section obtained by solving `p x = b_j` with free coordinates zero;
/// for a split presentation this is `b -> (0, b)`.
pub fn canonical_section<F: Field>(ext: &ExtensionPresentation<F>) -> Result<Section<F>> {
    let f = ext.field();
    let cols = (0..ext.b.dim())
        .map(|j| {
            ext.p
                .solve(&Algebra::unit_vector(f, ext.b.dim(), j))?
                .ok_or_else(|| Error::InvalidExtension("p is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Section::new(ext, Matrix::from_columns(f, ext.e.dim(), &cols)?)
}

/// `φ_b(a) = s(b) a`, `ψ_b(a) = a s(b)`, `χ(b1, b2) = s(b1) s(b2) − s(b1 b2)`,
/// each pulled back through `iota`.
pub fn cocycle_from_section<F: Field>(
    ext: &ExtensionPresentation<F>,
    s: &Section<F>,
) -> Result<NabCocycle<F>> {
    let f = ext.field();
    if ext.iota.rank() != ext.a.dim() {
        return Err(Error::InvalidExtension("iota is not injective".into()));
    }
    let (da, db) = (ext.a.dim(), ext.b.dim());
    let e = &ext.e;
    let mul = |x: &[F::Elem], y: &[F::Elem]| e.multiply(x, y).expect("E-vectors");
    let ia = |i: usize| ext.iota.column(i);
    let sb = |j: usize| s.s.column(j);

    let mut phi = Bilinear::zero(f, db, da, da);
    let mut psi = Bilinear::zero(f, da, db, da);
    let mut chi = Bilinear::zero(f, db, db, da);
    for j in 0..db {
        for i in 0..da {
            let v = ext.pull_back(&mul(&sb(j), &ia(i)), "s(b) a")?;
            for (k, x) in v.into_iter().enumerate() {
                phi.set(k, j, i, x);
            }
            let v = ext.pull_back(&mul(&ia(i), &sb(j)), "a s(b)")?;
            for (k, x) in v.into_iter().enumerate() {
                psi.set(k, i, j, x);
            }
        }
        for j2 in 0..db {
            let prod = mul(&sb(j), &sb(j2));
            let lifted = s.apply(&ext.b.structure_constants(j, j2));
            let diff: Vec<_> = prod.iter().zip(&lifted).map(|(x, y)| f.sub(x, y)).collect();
            let v = ext.pull_back(&diff, "s(b1) s(b2) - s(b1 b2)")?;
            for (k, x) in v.into_iter().enumerate() {
                chi.set(k, j, j2, x);
            }
        }
    }
    NabCocycle::new(ext.a.clone(), ext.b.clone(), phi, psi, chi)
}

/// `β` with `iota β = s − s2`. With this orientation the cocycle of `s2` is
/// `T_β` of the cocycle of `s`.
pub fn section_difference<F: Field>(
    ext: &ExtensionPresentation<F>,
    s: &Section<F>,
    s2: &Section<F>,
) -> Result<GaugeParam<F>> {
    let diff = s.s.sub(&s2.s)?;
    let cols = (0..ext.b.dim())
        .map(|j| ext.pull_back(&diff.column(j), "s - s'"))
        .collect::<Result<Vec<_>>>()?;
    GaugeParam::new(
        Matrix::from_columns(ext.field(), ext.a.dim(), &cols)?,
        ext.a.dim(),
        ext.b.dim(),
    )
}

/// Every section of an extension over a prime field: the canonical one plus
/// `iota γ` for each `γ: B -> A`.
pub fn all_sections(
    ext: &ExtensionPresentation<PrimeField>,
    budget: u128,
) -> Result<Vec<Section<PrimeField>>> {
    let f = *ext.field();
    let (da, db) = (ext.a.dim(), ext.b.dim());
    let count = u128::from(f.modulus())
        .checked_pow((da * db) as u32)
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded {
            size: count,
            budget,
        });
    }
    let s0 = canonical_section(ext)?;
    multi_indices(da * db, f.modulus() as usize)
        .map(|digits| {
            let gamma = Matrix::from_rows(&f, da, db, digits.iter().map(|&d| d as u32).collect())?;
            Section::new(ext, s0.s.add(&ext.iota.compose(&gamma)?)?)
        })
        .collect()
}

/// Outcome of [`check_extension_equivalence`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceDiagnostics {
    pub morphism: bool,
    pub iota_commutes: bool,
    pub p_commutes: bool,
    pub failures: Vec<String>,
}

impl EquivalenceDiagnostics {
    pub fn holds(&self) -> bool {
        self.morphism && self.iota_commutes && self.p_commutes
    }
}

/// Checks that `theta: E -> E'` is an algebra morphism with
/// `theta iota = iota'` and `p' theta = p`.
pub fn check_extension_equivalence<F: Field>(
    ext: &ExtensionPresentation<F>,
    ext2: &ExtensionPresentation<F>,
    theta: &Matrix<F>,
) -> Result<EquivalenceDiagnostics> {
    if theta.rows() != ext2.e.dim() || theta.cols() != ext.e.dim() {
        return Err(shape_err(
            ext2.e.dim() * ext.e.dim(),
            theta.rows() * theta.cols(),
        ));
    }
    let f = ext.field();
    let mut d = EquivalenceDiagnostics {
        morphism: true,
        ..Default::default()
    };
    for idx in multi_indices(2, ext.e.dim()) {
        let (i, j) = (idx[0], idx[1]);
        let lhs = theta.apply(&ext.e.structure_constants(i, j))?;
        let rhs = ext2.e.multiply(&theta.column(i), &theta.column(j))?;
        if !vec_eq(f, &lhs, &rhs) {
            d.morphism = false;
            d.failures
                .push(format!("theta(e{i} e{j}) != theta(e{i}) theta(e{j})"));
            break;
        }
    }
    d.iota_commutes = theta.compose(&ext.iota).ok() == Some(ext2.iota.clone());
    if !d.iota_commutes {
        d.failures.push("theta o iota != iota'".into());
    }
    d.p_commutes = ext2.p.compose(theta).ok() == Some(ext.p.clone());
    if !d.p_commutes {
        d.failures.push("p' o theta != p".into());
    }
    Ok(d)
}

/// `theta(a + b) = a + β(b) + b` on `A ⊕ B`: the isomorphism from the
/// extension of `c` to the extension of `T_β(c)`.
pub fn theta_for_gauge<F: Field>(beta: &GaugeParam<F>) -> Matrix<F> {
    let f = beta.beta.field();
    let (da, db) = (beta.a_dim(), beta.b_dim());
    let mut theta = Matrix::identity(f, da + db);
    for i in 0..da {
        for j in 0..db {
            theta.set(i, da + j, beta.beta.get(i, j).clone());
        }
    }
    theta
}
