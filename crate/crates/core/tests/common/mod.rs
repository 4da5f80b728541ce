#![allow(dead_code)]

use nabext::algebra::Algebra;
use nabext::field::Field;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn table<F: Field>(
    f: &F,
    prefix: &str,
    n: usize,
    rule: impl Fn(usize, usize) -> Option<usize>,
) -> Algebra<F> {
    Algebra::from_table(f, names(prefix, n), |i, j| {
        let mut v = vec![f.zero(); n];
        if let Some(k) = rule(i, j) {
            v[k] = f.one();
        }
        v
    })
    .unwrap()
}

/// `x^2 = y`, every other product zero.
pub fn nil2<F: Field>(f: &F, prefix: &str) -> Algebra<F> {
    table(f, prefix, 2, |i, j| ((i, j) == (0, 0)).then_some(1))
}

/// `F[x]/(x^n)` on `1, x, .., x^{n-1}`.
pub fn truncated_poly<F: Field>(f: &F, prefix: &str, n: usize) -> Algebra<F> {
    table(f, prefix, n, |i, j| (i + j < n).then_some(i + j))
}

/// `x F[x]/(x^{n+1})` on `e_i = x^{i+1}`.
pub fn nil_poly<F: Field>(f: &F, prefix: &str, n: usize) -> Algebra<F> {
    table(f, prefix, n, |i, j| (i + j + 2 <= n).then_some(i + j + 1))
}

/// Upper triangular 2x2 matrices on `e11, e12, e22`.
pub fn upper_triangular<F: Field>(f: &F, prefix: &str) -> Algebra<F> {
    table(f, prefix, 3, |i, j| match (i, j) {
        (0, 0) => Some(0),
        (0, 1) => Some(1),
        (1, 2) => Some(1),
        (2, 2) => Some(2),
        _ => None,
    })
}

/// The group algebra of `Z/2` on `1, g`.
pub fn group_z2<F: Field>(f: &F, prefix: &str) -> Algebra<F> {
    table(f, prefix, 2, |i, j| Some((i + j) % 2))
}

/// A left-zero band: `e_i e_j = e_i`.
pub fn left_band<F: Field>(f: &F, prefix: &str, n: usize) -> Algebra<F> {
    table(f, prefix, n, |i, _| Some(i))
}

/// Associative algebras of dimension at most `max_dim`.
pub fn associative_library<F: Field>(f: &F, prefix: &str, max_dim: usize) -> Vec<Algebra<F>> {
    let mut out = Vec::new();
    for n in 1..=max_dim {
        out.push(Algebra::zero_product(f, prefix, n).unwrap());
        out.push(Algebra::diagonal_idempotents(f, prefix, n).unwrap());
        out.push(truncated_poly(f, prefix, n));
        if n >= 2 {
            out.push(nil_poly(f, prefix, n));
            out.push(left_band(f, prefix, n));
        }
        if n == 2 {
            out.push(nil2(f, prefix));
            out.push(group_z2(f, prefix));
        }
        if n == 3 {
            out.push(upper_triangular(f, prefix));
        }
    }
    for a in &out {
        assert!(a.is_associative(), "library algebra {a:?}");
    }
    out
}
