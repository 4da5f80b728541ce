//! JSON documents for algebras, maps, cocycles, gauge parameters,
//! extensions and sections.
//!
//! Scalars are always written as strings (`"3/2"`, `"1"`); integers are also
//! accepted on input. Keys come out sorted and entries are listed in
//! increasing index order, so output bytes depend only on the value.

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, SparseTable, SplitSpace};
use crate::classifier::ClassificationReport;
use crate::cochain::{multi_indices, MultilinearMap};
use crate::error::{Error, Result};
use crate::extension::{ExtensionPresentation, Section};
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;
use crate::nonabelian::{Bilinear, CocycleViolation, GaugeParam, NabCocycle};

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn scalar<F: Field>(field: &F, v: &Value) -> Result<F::Elem> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse(&n.to_string()),
        _ => Err(bad(format!(
            "coefficient {v} must be a string like \"3/2\""
        ))),
    }
}

pub fn field_spec_to_json(spec: FieldSpec) -> Value {
    match spec {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::PrimeField(p) => json!({ "p": p }),
    }
}

/// Accepts `"Q"`, `"F5"` or `{"p": 5}`.
pub fn field_spec_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) => FieldSpec::parse(s),
        Value::Object(o) => {
            let p = o
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field object must be {\"p\": <prime>}"))?;
            FieldSpec::prime(p)
        }
        _ => Err(bad("field must be \"Q\" or {\"p\": <prime>}")),
    }
}

/// The field declared by an algebra document.
pub fn algebra_field(v: &Value) -> Result<FieldSpec> {
    field_spec_from_json(field_of(v, "field")?)
}

fn require_field<F: Field>(field: &F, declared: FieldSpec) -> Result<()> {
    if declared != field.spec() {
        return Err(Error::FieldMismatch(
            field.spec().to_string(),
            declared.to_string(),
        ));
    }
    Ok(())
}

pub fn algebra_from_json<F: Field>(field: &F, v: &Value) -> Result<Algebra<F>> {
    as_object(v, "algebra")?;
    require_field(field, algebra_field(v)?)?;
    let dim = as_usize(field_of(v, "dim")?, "dim")?;
    let basis = match v.get("basis") {
        None => (0..dim).map(|i| format!("e{i}")).collect(),
        Some(b) => as_array(b, "basis")?
            .iter()
            .map(|n| {
                n.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("basis names must be strings"))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if basis.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: basis.len(),
        });
    }
    let mut table = SparseTable::new();
    for row in as_array(field_of(v, "products")?, "products")? {
        let row = as_array(row, "product row")?;
        if row.len() < 2 {
            return Err(bad("product row must start with i, j"));
        }
        let i = as_usize(&row[0], "product index")?;
        let j = as_usize(&row[1], "product index")?;
        let terms = table.entry((i, j)).or_default();
        for term in &row[2..] {
            let term = as_array(term, "product term")?;
            if term.len() != 2 {
                return Err(bad("product term must be [k, coeff]"));
            }
            terms.push((
                as_usize(&term[0], "product index")?,
                scalar(field, &term[1])?,
            ));
        }
    }
    Algebra::from_sparse(field, basis, &table)
}

pub fn algebra_to_json<F: Field>(a: &Algebra<F>) -> Value {
    let f = a.field();
    let products: Vec<Value> = a
        .sparse_table()
        .into_iter()
        .map(|((i, j), terms)| {
            let mut row = vec![json!(i), json!(j)];
            row.extend(terms.iter().map(|(k, c)| json!([k, f.format(c)])));
            Value::Array(row)
        })
        .collect();
    json!({
        "field": field_spec_to_json(f.spec()),
        "dim": a.dim(),
        "basis": a.basis_names(),
        "products": products,
    })
}

fn entries_into<F: Field>(
    field: &F,
    v: &Value,
    index_len: usize,
    bounds: &[usize],
    mut put: impl FnMut(&[usize], F::Elem),
) -> Result<()> {
    for e in as_array(v, "entries")? {
        let e = as_array(e, "entry")?;
        if e.len() != index_len + 1 {
            return Err(bad(format!(
                "entry {e:?} must hold {index_len} indices and a coefficient"
            )));
        }
        let idx = e[..index_len]
            .iter()
            .map(|x| as_usize(x, "entry index"))
            .collect::<Result<Vec<_>>>()?;
        for (&index, &dim) in idx.iter().zip(bounds) {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        put(&idx, scalar(field, &e[index_len])?);
    }
    Ok(())
}

fn entry(idx: impl IntoIterator<Item = usize>, coeff: String) -> Value {
    let mut row: Vec<Value> = idx.into_iter().map(|i| json!(i)).collect();
    row.push(json!(coeff));
    Value::Array(row)
}

/// Reads `{"arity", "source_dim", "target_dim", "entries": [[k, i.., c]]}`.
/// An optional `"field"` must agree with `field`.
pub fn map_from_json<F: Field>(field: &F, v: &Value) -> Result<MultilinearMap<F>> {
    as_object(v, "map")?;
    if let Some(declared) = v.get("field") {
        require_field(field, field_spec_from_json(declared)?)?;
    }
    let arity = as_usize(field_of(v, "arity")?, "arity")?;
    let src = as_usize(field_of(v, "source_dim")?, "source_dim")?;
    let tgt = as_usize(field_of(v, "target_dim")?, "target_dim")?;
    let mut map = MultilinearMap::zero(field, arity, src, tgt);
    let mut bounds = vec![tgt];
    bounds.extend(std::iter::repeat_n(src, arity));
    entries_into(
        field,
        field_of(v, "entries")?,
        arity + 1,
        &bounds,
        |idx, c| {
            let cur = map.get(idx[0], &idx[1..]).clone();
            map.set(idx[0], &idx[1..], field.add(&cur, &c));
        },
    )?;
    Ok(map)
}

/// The optional `"split": {"a_dim", "b_dim"}` header of a map document.
pub fn map_split(v: &Value) -> Result<Option<SplitSpace>> {
    match v.get("split") {
        None | Some(Value::Null) => Ok(None),
        Some(s) => Ok(Some(SplitSpace::new(
            as_usize(field_of(s, "a_dim")?, "a_dim")?,
            as_usize(field_of(s, "b_dim")?, "b_dim")?,
        ))),
    }
}

pub fn map_to_json<F: Field>(m: &MultilinearMap<F>, split: Option<SplitSpace>) -> Value {
    let f = m.field();
    let mut entries = Vec::new();
    for k in 0..m.target_dim() {
        for idx in multi_indices(m.arity(), m.source_dim()) {
            let c = m.get(k, &idx);
            if !f.is_zero(c) {
                entries.push(entry(std::iter::once(k).chain(idx), f.format(c)));
            }
        }
    }
    let mut out = json!({
        "field": field_spec_to_json(f.spec()),
        "arity": m.arity(),
        "source_dim": m.source_dim(),
        "target_dim": m.target_dim(),
        "entries": entries,
    });
    if let Some(s) = split {
        out["split"] = json!({ "a_dim": s.a_dim, "b_dim": s.b_dim });
    }
    out
}

fn bilinear_from_json<F: Field>(
    field: &F,
    v: &Value,
    shape: (usize, usize, usize),
) -> Result<Bilinear<F>> {
    let (l, r, t) = shape;
    let mut out = Bilinear::zero(field, l, r, t);
    entries_into(field, v, 3, &[t, l, r], |idx, c| {
        let cur = out.get(idx[0], idx[1], idx[2]).clone();
        out.set(idx[0], idx[1], idx[2], field.add(&cur, &c));
    })?;
    Ok(out)
}

fn bilinear_to_json<F: Field>(m: &Bilinear<F>) -> Value {
    let f = m.field();
    let (l, r, t) = m.shape();
    let mut entries = Vec::new();
    for k in 0..t {
        for i in 0..l {
            for j in 0..r {
                let c = m.get(k, i, j);
                if !f.is_zero(c) {
                    entries.push(entry([k, i, j], f.format(c)));
                }
            }
        }
    }
    Value::Array(entries)
}

/// The field declared by the `"A"` algebra of a cocycle document.
pub fn cocycle_field(v: &Value) -> Result<FieldSpec> {
    algebra_field(field_of(v, "A")?)
}

/// Reads `{"A", "B", "phi", "psi", "chi"}`. Entries are `[k, i, j, c]`:
/// `phi` has `i` in B and `j` in A (`φ_{b_i}(a_j)`), `psi` has `i` in A and
/// `j` in B (`a_i s(b_j)`), `chi` has both in B; `k` indexes A.
pub fn cocycle_from_json<F: Field>(field: &F, v: &Value) -> Result<NabCocycle<F>> {
    as_object(v, "cocycle")?;
    let a = algebra_from_json(field, field_of(v, "A")?)?;
    let b = algebra_from_json(field, field_of(v, "B")?)?;
    let (da, db) = (a.dim(), b.dim());
    let phi = bilinear_from_json(field, field_of(v, "phi")?, (db, da, da))?;
    let psi = bilinear_from_json(field, field_of(v, "psi")?, (da, db, da))?;
    let chi = bilinear_from_json(field, field_of(v, "chi")?, (db, db, da))?;
    NabCocycle::new(a, b, phi, psi, chi)
}

pub fn cocycle_to_json<F: Field>(c: &NabCocycle<F>) -> Value {
    json!({
        "A": algebra_to_json(&c.a),
        "B": algebra_to_json(&c.b),
        "phi": bilinear_to_json(&c.phi),
        "psi": bilinear_to_json(&c.psi),
        "chi": bilinear_to_json(&c.chi),
    })
}

/// Matrix from `[[i, j, c], ...]` with known shape.
pub fn matrix_from_entries<F: Field>(
    field: &F,
    v: &Value,
    rows: usize,
    cols: usize,
) -> Result<Matrix<F>> {
    let mut m = Matrix::zeros(field, rows, cols);
    entries_into(field, v, 2, &[rows, cols], |idx, c| {
        let cur = m.get(idx[0], idx[1]).clone();
        m.set(idx[0], idx[1], field.add(&cur, &c));
    })?;
    Ok(m)
}

/// Matrix from either `{"rows", "cols", "entries"}` or a bare entry list
/// whose shape is `shape`.
pub fn matrix_from_json<F: Field>(
    field: &F,
    v: &Value,
    shape: Option<(usize, usize)>,
) -> Result<Matrix<F>> {
    match v {
        Value::Object(_) => {
            let rows = as_usize(field_of(v, "rows")?, "rows")?;
            let cols = as_usize(field_of(v, "cols")?, "cols")?;
            if let Some((r, c)) = shape {
                if (r, c) != (rows, cols) {
                    return Err(Error::DimensionMismatch {
                        expected: r * c,
                        found: rows * cols,
                    });
                }
            }
            matrix_from_entries(field, field_of(v, "entries")?, rows, cols)
        }
        _ => {
            let (rows, cols) = shape.ok_or_else(|| {
                bad("matrix shape unknown; use {\"rows\", \"cols\", \"entries\"}")
            })?;
            matrix_from_entries(field, v, rows, cols)
        }
    }
}

pub fn matrix_entries<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.get(i, j);
            if !f.is_zero(c) {
                entries.push(entry([i, j], f.format(c)));
            }
        }
    }
    Value::Array(entries)
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": matrix_entries(m) })
}

/// Reads `{"beta": [[i, j, c], ...]}` with `i` in A and `j` in B.
pub fn beta_from_json<F: Field>(
    field: &F,
    v: &Value,
    a_dim: usize,
    b_dim: usize,
) -> Result<GaugeParam<F>> {
    as_object(v, "gauge parameter")?;
    let m = matrix_from_json(field, field_of(v, "beta")?, Some((a_dim, b_dim)))?;
    GaugeParam::new(m, a_dim, b_dim)
}

pub fn beta_to_json<F: Field>(beta: &GaugeParam<F>) -> Value {
    json!({ "beta": matrix_entries(&beta.beta) })
}

/// The field declared by the `"E"` algebra of an extension document.
pub fn extension_field(v: &Value) -> Result<FieldSpec> {
    algebra_field(field_of(v, "E")?)
}

/// Reads `{"E", "iota", "p"}` with optional `"A"` and `"B"`. Without them
/// `A` is the pullback of `E` along `iota` and `B` the induced quotient,
/// and `iota`, `p` must carry their shapes.
pub fn extension_from_json<F: Field>(field: &F, v: &Value) -> Result<ExtensionPresentation<F>> {
    as_object(v, "extension")?;
    let e = algebra_from_json(field, field_of(v, "E")?)?;
    match (v.get("A"), v.get("B")) {
        (Some(a), Some(b)) => {
            let a = algebra_from_json(field, a)?;
            let b = algebra_from_json(field, b)?;
            let iota = matrix_from_json(field, field_of(v, "iota")?, Some((e.dim(), a.dim())))?;
            let p = matrix_from_json(field, field_of(v, "p")?, Some((b.dim(), e.dim())))?;
            ExtensionPresentation::new(a, b, e, iota, p)
        }
        (None, None) => {
            let iota = matrix_from_json(field, field_of(v, "iota")?, None)?;
            let p = matrix_from_json(field, field_of(v, "p")?, None)?;
            ExtensionPresentation::induced(e, iota, p)
        }
        _ => Err(bad("give both \"A\" and \"B\" or neither")),
    }
}

pub fn extension_to_json<F: Field>(ext: &ExtensionPresentation<F>) -> Value {
    json!({
        "A": algebra_to_json(&ext.a),
        "B": algebra_to_json(&ext.b),
        "E": algebra_to_json(&ext.e),
        "iota": matrix_to_json(&ext.iota),
        "p": matrix_to_json(&ext.p),
    })
}

/// Reads `{"s": ...}`, a map `B -> E`.
pub fn section_from_json<F: Field>(
    field: &F,
    v: &Value,
    ext: &ExtensionPresentation<F>,
) -> Result<Section<F>> {
    as_object(v, "section")?;
    let s = matrix_from_json(field, field_of(v, "s")?, Some((ext.e.dim(), ext.b.dim())))?;
    Section::new(ext, s)
}

pub fn section_to_json<F: Field>(s: &Section<F>) -> Value {
    json!({ "s": matrix_to_json(&s.s) })
}

pub fn violation_to_json<F: Field>(c: &NabCocycle<F>, v: &CocycleViolation<F>) -> Value {
    let split = c.split();
    let names: Vec<String> = v
        .witness
        .iter()
        .map(|&i| {
            if i < split.a_dim {
                c.a.basis_names()[i].clone()
            } else {
                c.b.basis_names()[i - split.a_dim].clone()
            }
        })
        .collect();
    let f = c.field();
    json!({
        "equation": v.which.name(),
        "label": v.which.to_string(),
        "pattern": v.which.pattern().to_string(),
        "witness": v.witness,
        "witness_names": names,
        "discrepancy": v.discrepancy.iter().map(|x| f.format(x)).collect::<Vec<_>>(),
    })
}

pub fn report_to_json(r: &ClassificationReport) -> Value {
    serde_json::to_value(r).expect("reports always serialize")
}
