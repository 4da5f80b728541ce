//! Exhaustive and sampled enumeration of cocycles, extensions and their
//! equivalence classes over a prime field.
//!
//! A candidate is a choice of every coefficient of `φ`, `ψ` and `χ`; it is
//! numbered by reading those coefficients (in storage order, `φ` first) as
//! base-`p` digits, least significant first.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{direct_sum_space, Algebra, Block};
use crate::cochain::MultilinearMap;
use crate::error::{Error, Result};
use crate::extension::{canonical_section, cocycle_from_section, ExtensionPresentation};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;
use crate::nonabelian::{
    build_extension, cocycle_equivalence_transform, cocycle_to_mc, is_valid_cocycle, Bilinear,
    GaugeParam, NabCocycle,
};
use crate::split::SplitDgla;

pub const DEFAULT_BUDGET: u128 = 1 << 24;

const CHUNK: u128 = 1 << 12;

/// Enumeration settings shared by every sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest candidate space swept exhaustively; also caps the sample size
    /// and the number of gauge parameters searched.
    pub budget: u128,
    /// Sample this many candidates when the space exceeds the budget.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Worker threads; 0 lets the pool choose.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            samples: None,
            seed: 0,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// All candidate cocycles of `B` with values in `A` over `F_p`.
#[derive(Clone, Debug)]
pub struct CandidateSpace {
    a: Algebra<PrimeField>,
    b: Algebra<PrimeField>,
}

impl CandidateSpace {
    pub fn new(a: Algebra<PrimeField>, b: Algebra<PrimeField>) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(
                a.field().spec().to_string(),
                b.field().spec().to_string(),
            ));
        }
        Ok(CandidateSpace { a, b })
    }

    pub fn field(&self) -> &PrimeField {
        self.a.field()
    }

    pub fn a(&self) -> &Algebra<PrimeField> {
        &self.a
    }

    pub fn b(&self) -> &Algebra<PrimeField> {
        &self.b
    }

    /// Coefficient counts of `φ`, `ψ`, `χ`.
    pub fn entry_counts(&self) -> [usize; 3] {
        let (da, db) = (self.a.dim(), self.b.dim());
        [db * da * da, da * db * da, db * db * da]
    }

    pub fn num_entries(&self) -> usize {
        self.entry_counts().iter().sum()
    }

    fn power(&self, exp: usize) -> Option<u128> {
        u128::from(self.field().modulus()).checked_pow(u32::try_from(exp).ok()?)
    }

    /// `p^{#entries}`, or `None` if it does not fit in a `u128`.
    pub fn size(&self) -> Option<u128> {
        self.power(self.num_entries())
    }

    /// `p^{dim A dim B}`, the number of gauge parameters.
    pub fn beta_count(&self) -> Option<u128> {
        self.power(self.a.dim() * self.b.dim())
    }

    fn digits(&self, mut index: u128, len: usize) -> Vec<u32> {
        let p = u128::from(self.field().modulus());
        (0..len)
            .map(|_| {
                let d = (index % p) as u32;
                index /= p;
                d
            })
            .collect()
    }

    fn number(&self, digits: impl DoubleEndedIterator<Item = u32>) -> u128 {
        let p = u128::from(self.field().modulus());
        digits.rev().fold(0, |acc, d| acc * p + u128::from(d))
    }

    pub fn decode(&self, index: u128) -> NabCocycle<PrimeField> {
        let f = *self.field();
        let (da, db) = (self.a.dim(), self.b.dim());
        let [n_phi, n_psi, _] = self.entry_counts();
        let d = self.digits(index, self.num_entries());
        let phi = Bilinear::from_coeffs(&f, db, da, da, d[..n_phi].to_vec());
        let psi = Bilinear::from_coeffs(&f, da, db, da, d[n_phi..n_phi + n_psi].to_vec());
        let chi = Bilinear::from_coeffs(&f, db, db, da, d[n_phi + n_psi..].to_vec());
        NabCocycle::new(
            self.a.clone(),
            self.b.clone(),
            phi.expect("sized"),
            psi.expect("sized"),
            chi.expect("sized"),
        )
        .expect("shapes match the space")
    }

    pub fn index_of(&self, c: &NabCocycle<PrimeField>) -> u128 {
        let all = c
            .phi
            .coeffs()
            .iter()
            .chain(c.psi.coeffs())
            .chain(c.chi.coeffs())
            .copied()
            .collect::<Vec<_>>();
        self.number(all.into_iter())
    }

    pub fn decode_beta(&self, index: u128) -> GaugeParam<PrimeField> {
        let (da, db) = (self.a.dim(), self.b.dim());
        let m =
            Matrix::from_rows(self.field(), da, db, self.digits(index, da * db)).expect("sized");
        GaugeParam::new(m, da, db).expect("sized")
    }

    /// The product table on `A ⊕ B` for candidate `index`, assembled directly:
    /// `m_A`, `m_B` in their blocks and the candidate digits in the
    /// `BA`, `AB`, `BB` -> `A` slots.
    pub fn extension_table(&self, index: u128) -> Algebra<PrimeField> {
        let base = direct_sum_space(&self.a, &self.b).expect("same field");
        let split = base.split;
        let (da, db) = (split.a_dim, split.b_dim);
        let mut product: MultilinearMap<PrimeField> = base.algebra.product().clone();
        let mut digits = self.digits(index, self.num_entries()).into_iter();
        let slots = [
            (Block::B, Block::A),
            (Block::A, Block::B),
            (Block::B, Block::B),
        ];
        for (left, right) in slots {
            let (nl, nr) = (split.indices(left).len(), split.indices(right).len());
            for k in 0..da {
                for i in 0..nl {
                    for j in 0..nr {
                        let d = digits.next().expect("digit count");
                        let idx = [
                            split.indices(left).start + i,
                            split.indices(right).start + j,
                        ];
                        let cur = *product.get(k, &idx);
                        product.set(k, &idx, self.field().add(&cur, &d));
                    }
                }
            }
        }
        debug_assert!(digits.next().is_none() && db == split.b_dim);
        Algebra::from_product(base.algebra.basis_names().to_vec(), product).expect("valid shape")
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::CrossCheck(format!("thread pool: {e}")))
}

/// Candidate indices to visit, in increasing order.
enum Plan {
    Range(u128),
    List(Vec<u128>),
}

fn plan(space: &CandidateSpace, opts: &EnumOptions) -> Result<(SearchMode, Plan)> {
    let size = space.size().ok_or(Error::BudgetExceeded {
        size: u128::MAX,
        budget: opts.budget,
    })?;
    if size <= opts.budget {
        return Ok((SearchMode::Exhaustive, Plan::Range(size)));
    }
    let Some(samples) = opts.samples else {
        return Err(Error::BudgetExceeded {
            size,
            budget: opts.budget,
        });
    };
    if samples as u128 > opts.budget {
        return Err(Error::BudgetExceeded {
            size: samples as u128,
            budget: opts.budget,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let picked: BTreeSet<u128> = (0..samples).map(|_| rng.gen_range(0..size)).collect();
    Ok((
        SearchMode::Sampled {
            samples,
            seed: opts.seed,
        },
        Plan::List(picked.into_iter().collect()),
    ))
}

/// Applies `keep` to every planned index in parallel; output is in index order.
fn sweep<T: Send>(
    opts: &EnumOptions,
    plan: &Plan,
    keep: impl Fn(u128) -> Option<T> + Sync,
) -> Result<(u128, Vec<T>)> {
    let pool = pool(opts.jobs)?;
    let out = pool.install(|| match plan {
        Plan::Range(size) => {
            let chunks = size.div_ceil(CHUNK) as usize;
            (0..chunks)
                .into_par_iter()
                .flat_map_iter(|c| {
                    let lo = c as u128 * CHUNK;
                    let hi = (lo + CHUNK).min(*size);
                    (lo..hi).filter_map(&keep).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        }
        Plan::List(list) => list.par_iter().filter_map(|&i| keep(i)).collect(),
    });
    let examined = match plan {
        Plan::Range(size) => *size,
        Plan::List(list) => list.len() as u128,
    };
    Ok((examined, out))
}

fn require_associative(space: &CandidateSpace) -> Result<()> {
    if !space.a.is_associative() {
        return Err(Error::NotAssociative("A"));
    }
    if !space.b.is_associative() {
        return Err(Error::NotAssociative("B"));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CocycleEnumeration {
    pub mode: SearchMode,
    pub examined: u128,
    /// `(candidate index, cocycle)` in increasing index order.
    pub cocycles: Vec<(u128, NabCocycle<PrimeField>)>,
}

pub fn enumerate_cocycles(
    space: &CandidateSpace,
    opts: &EnumOptions,
) -> Result<CocycleEnumeration> {
    require_associative(space)?;
    let (mode, plan) = plan(space, opts)?;
    let (examined, cocycles) = sweep(opts, &plan, |i| {
        let c = space.decode(i);
        is_valid_cocycle(&c)
            .expect("A and B checked")
            .then_some((i, c))
    })?;
    Ok(CocycleEnumeration {
        mode,
        examined,
        cocycles,
    })
}

#[derive(Clone, Debug)]
pub struct ExtensionEnumeration {
    pub mode: SearchMode,
    pub examined: u128,
    pub extensions: Vec<(u128, Algebra<PrimeField>)>,
}

/// Associative products on `A ⊕ B` with `m_A`, `m_B` fixed, no B-valued
/// cross terms, and free A-valued `BA`, `AB`, `BB` parts.
pub fn enumerate_extensions(
    space: &CandidateSpace,
    opts: &EnumOptions,
) -> Result<ExtensionEnumeration> {
    require_associative(space)?;
    let (mode, plan) = plan(space, opts)?;
    let (examined, extensions) = sweep(opts, &plan, |i| {
        let e = space.extension_table(i);
        e.is_associative().then_some((i, e))
    })?;
    Ok(ExtensionEnumeration {
        mode,
        examined,
        extensions,
    })
}

/// A cocycle in an orbit and the gauge parameters linking it to the
/// representative, as row-major entries of `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMember {
    #[serde(serialize_with = "wide::one")]
    pub index: u128,
    /// `β` with `T_β(representative) = member`.
    pub beta: Option<Vec<u32>>,
    /// `β'` with `T_β'(member) = representative`.
    pub reverse_beta: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    #[serde(serialize_with = "wide::one")]
    pub representative: u128,
    pub members: Vec<OrbitMember>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub orbits: Vec<Orbit>,
    /// Classes of the relation `c' = T_β(c)`, closed by union-find.
    #[serde(serialize_with = "wide::nested")]
    pub cocycle_classes: Vec<Vec<u128>>,
    /// Classes of the MC images under the closed-form gauge action.
    #[serde(serialize_with = "wide::nested")]
    pub gauge_classes: Vec<Vec<u128>>,
    pub partitions_agree: bool,
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    /// Transforms of listed cocycles that were not themselves listed; always
    /// empty for an exhaustive sweep.
    #[serde(serialize_with = "wide::list")]
    pub escaped: Vec<u128>,
}

/// Indices beyond `u64` are written as decimal strings.
mod wide {
    use serde::{Serialize, Serializer};

    #[derive(Serialize)]
    #[serde(untagged)]
    enum Wide {
        Small(u64),
        Large(String),
    }

    fn wrap(v: u128) -> Wide {
        u64::try_from(v).map_or_else(|_| Wide::Large(v.to_string()), Wide::Small)
    }

    pub fn one<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        wrap(*v).serialize(s)
    }

    pub fn list<S: Serializer>(v: &[u128], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|&x| wrap(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn nested<S: Serializer>(v: &[Vec<u128>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|g| g.iter().map(|&x| wrap(x)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

fn classes(uf: UnionFind<usize>, indices: &[u128]) -> Vec<Vec<u128>> {
    let mut groups: BTreeMap<usize, Vec<u128>> = BTreeMap::new();
    for (pos, label) in uf.into_labeling().into_iter().enumerate() {
        groups.entry(label).or_default().push(indices[pos]);
    }
    let mut out: Vec<Vec<u128>> = groups.into_values().collect();
    for g in &mut out {
        g.sort_unstable();
    }
    out.sort();
    out
}

/// Partitions `cocycles` by gauge equivalence twice: on cocycles through
/// `T_β`, and on their MC images through the closed-form gauge action.
pub fn orbit_partition(
    space: &CandidateSpace,
    cocycles: &[(u128, NabCocycle<PrimeField>)],
    opts: &EnumOptions,
) -> Result<OrbitPartition> {
    let beta_count = space.beta_count().unwrap_or(u128::MAX);
    if beta_count > opts.budget {
        return Err(Error::BudgetExceeded {
            size: beta_count,
            budget: opts.budget,
        });
    }
    let mut sorted = cocycles.to_vec();
    sorted.sort_by_key(|(i, _)| *i);
    sorted.dedup_by_key(|(i, _)| *i);
    let indices: Vec<u128> = sorted.iter().map(|(i, _)| *i).collect();
    let position: HashMap<u128, usize> = indices.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let betas: Vec<GaugeParam<PrimeField>> =
        (0..beta_count).map(|i| space.decode_beta(i)).collect();
    let n = sorted.len();

    let mut cocycle_uf = UnionFind::new(n);
    let mut escaped = BTreeSet::new();
    let mut images: Vec<Vec<u128>> = Vec::with_capacity(n);
    for (p, (_, c)) in sorted.iter().enumerate() {
        let mut row = Vec::with_capacity(betas.len());
        for beta in &betas {
            let t = space.index_of(&cocycle_equivalence_transform(c, beta)?);
            match position.get(&t) {
                Some(&q) => {
                    cocycle_uf.union(p, q);
                }
                None => {
                    escaped.insert(t);
                }
            }
            row.push(t);
        }
        images.push(row);
    }

    let dgla = SplitDgla::new(&space.a, &space.b)?;
    let mc: Vec<_> = sorted.iter().map(|(_, c)| cocycle_to_mc(c)).collect();
    let mc_position: HashMap<Vec<u32>, usize> = mc
        .iter()
        .enumerate()
        .map(|(p, x)| (x.map().coeffs().to_vec(), p))
        .collect();
    let mut gauge_uf = UnionFind::new(n);
    for (p, x) in mc.iter().enumerate() {
        for beta in &betas {
            let y = dgla.gauge_closed_form(x, beta)?;
            if let Some(&q) = mc_position.get(y.map().coeffs()) {
                gauge_uf.union(p, q);
            }
        }
    }

    let cocycle_classes = classes(cocycle_uf, &indices);
    let gauge_classes = classes(gauge_uf, &indices);
    let partitions_agree = cocycle_classes == gauge_classes;

    let beta_entries = |b: usize| betas[b].beta.entries().to_vec();
    let reflexive = (0..n).all(|p| images[p][0] == indices[p]);
    let mut symmetric = true;
    let mut transitive = true;
    let mut orbits = Vec::with_capacity(cocycle_classes.len());
    for class in &cocycle_classes {
        let rep = class[0];
        let rp = position[&rep];
        let members = class
            .iter()
            .map(|&m| {
                let mp = position[&m];
                let beta = images[rp].iter().position(|&t| t == m).map(beta_entries);
                let reverse_beta = images[mp].iter().position(|&t| t == rep).map(beta_entries);
                transitive &= beta.is_some();
                symmetric &= reverse_beta.is_some();
                OrbitMember {
                    index: m,
                    beta,
                    reverse_beta,
                }
            })
            .collect();
        orbits.push(Orbit {
            representative: rep,
            members,
        });
    }
    Ok(OrbitPartition {
        orbits,
        cocycle_classes,
        gauge_classes,
        partitions_agree,
        reflexive,
        symmetric,
        transitive,
        escaped: escaped.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A representative cocycle's coefficients in storage order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleTable {
    #[serde(serialize_with = "wide::one")]
    pub index: u128,
    pub phi: Vec<u32>,
    pub psi: Vec<u32>,
    pub chi: Vec<u32>,
}

impl CocycleTable {
    fn of(index: u128, c: &NabCocycle<PrimeField>) -> Self {
        CocycleTable {
            index,
            phi: c.phi.coeffs().to_vec(),
            psi: c.psi.coeffs().to_vec(),
            chi: c.chi.coeffs().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub field: String,
    pub a_dim: usize,
    pub b_dim: usize,
    /// Structure constants of `A` and `B` as `(i, j, k, c)` with `c != 0`.
    pub a_products: Vec<(usize, usize, usize, u32)>,
    pub b_products: Vec<(usize, usize, usize, u32)>,
    pub mode: SearchMode,
    #[serde(serialize_with = "wide::one")]
    pub num_candidates: u128,
    #[serde(serialize_with = "wide::one")]
    pub examined: u128,
    pub num_cocycles: usize,
    pub num_extensions: usize,
    pub num_classes: usize,
    pub representatives: Vec<CocycleTable>,
    pub partition: OrbitPartition,
    pub cross_checks: Vec<CrossCheckResult>,
}

impl ClassificationReport {
    pub fn all_passed(&self) -> bool {
        self.cross_checks.iter().all(|c| c.passed)
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        match self.cross_checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::CrossCheck(format!("{}: {}", c.name, c.detail))),
        }
    }

    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        let mode = match &self.mode {
            SearchMode::Exhaustive => "exhaustive".to_string(),
            SearchMode::Sampled { samples, seed } => format!("sampled ({samples}, seed {seed})"),
        };
        let _ = writeln!(s, "field            {}", self.field);
        let _ = writeln!(s, "dims (A, B)      ({}, {})", self.a_dim, self.b_dim);
        let _ = writeln!(s, "mode             {mode}");
        let _ = writeln!(s, "candidates       {}", self.num_candidates);
        let _ = writeln!(s, "examined         {}", self.examined);
        let _ = writeln!(s, "cocycles         {}", self.num_cocycles);
        let _ = writeln!(s, "extensions       {}", self.num_extensions);
        let _ = writeln!(s, "classes          {}", self.num_classes);
        for orbit in &self.partition.orbits {
            let members: Vec<String> = orbit.members.iter().map(|m| m.index.to_string()).collect();
            let _ = writeln!(
                s,
                "  orbit {:>6}: {}",
                orbit.representative,
                members.join(" ")
            );
        }
        for c in &self.cross_checks {
            let verdict = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "{verdict} {} {}", c.name, c.detail);
        }
        s
    }
}

fn nonzero_table(alg: &Algebra<PrimeField>) -> Vec<(usize, usize, usize, u32)> {
    alg.sparse_table()
        .into_iter()
        .flat_map(|((i, j), v)| v.into_iter().map(move |(k, c)| (i, j, k, c)))
        .collect()
}

fn check(name: &str, passed: bool, detail: String) -> CrossCheckResult {
    CrossCheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Cocycles, extensions and classes for one pair `(A, B)`, with every
/// cross-check recorded in the report.
pub fn census(space: &CandidateSpace, opts: &EnumOptions) -> Result<ClassificationReport> {
    let cocycles = enumerate_cocycles(space, opts)?;
    let extensions = enumerate_extensions(space, opts)?;
    let partition = orbit_partition(space, &cocycles.cocycles, opts)?;
    let dgla = SplitDgla::new(&space.a, &space.b)?;
    let mut checks = Vec::new();

    let not_mc: Vec<u128> = cocycles
        .cocycles
        .iter()
        .filter(|(_, c)| !dgla.is_mc(&cocycle_to_mc(c)).unwrap_or(false))
        .map(|(i, _)| *i)
        .collect();
    checks.push(check(
        "cocycles_are_mc",
        not_mc.is_empty(),
        format!(
            "{} cocycles fail the MC equation {:?}",
            not_mc.len(),
            not_mc
        ),
    ));

    let c_idx: Vec<u128> = cocycles.cocycles.iter().map(|(i, _)| *i).collect();
    let e_idx: Vec<u128> = extensions.extensions.iter().map(|(i, _)| *i).collect();
    checks.push(check(
        "cocycles_match_associative_products",
        c_idx == e_idx,
        format!(
            "{} cocycles, {} associative twisted products",
            c_idx.len(),
            e_idx.len()
        ),
    ));

    let mut table_mismatch = Vec::new();
    let mut round_trip_failures = Vec::new();
    let ext_by_index: HashMap<u128, &Algebra<PrimeField>> =
        extensions.extensions.iter().map(|(i, e)| (*i, e)).collect();
    for (i, c) in &cocycles.cocycles {
        let built = build_extension(c)?;
        if ext_by_index.get(i).map(|e| e.product()) != Some(built.algebra.product()) {
            table_mismatch.push(*i);
        }
        let pres = ExtensionPresentation::from_split(&built, &space.a, &space.b)?;
        let back = canonical_section(&pres).and_then(|s| cocycle_from_section(&pres, &s));
        if back.as_ref().ok() != Some(c) {
            round_trip_failures.push(*i);
        }
    }
    checks.push(check(
        "build_extension_tables",
        table_mismatch.is_empty(),
        format!("mismatched tables {table_mismatch:?}"),
    ));
    checks.push(check(
        "section_round_trip",
        round_trip_failures.is_empty(),
        format!("round-trip failures {round_trip_failures:?}"),
    ));
    checks.push(check(
        "partitions_agree",
        partition.partitions_agree,
        format!(
            "{} cocycle classes, {} gauge classes",
            partition.cocycle_classes.len(),
            partition.gauge_classes.len()
        ),
    ));
    checks.push(check(
        "equivalence_relation",
        partition.reflexive && partition.symmetric && partition.transitive,
        format!(
            "reflexive {} symmetric {} transitive {}",
            partition.reflexive, partition.symmetric, partition.transitive
        ),
    ));
    if cocycles.mode == SearchMode::Exhaustive {
        checks.push(check(
            "gauge_closed_on_cocycles",
            partition.escaped.is_empty(),
            format!("transforms outside the cocycle set {:?}", partition.escaped),
        ));
    }

    let by_index: HashMap<u128, &NabCocycle<PrimeField>> =
        cocycles.cocycles.iter().map(|(i, c)| (*i, c)).collect();
    let representatives = partition
        .orbits
        .iter()
        .map(|o| CocycleTable::of(o.representative, by_index[&o.representative]))
        .collect();

    Ok(ClassificationReport {
        field: space.field().spec().to_string(),
        a_dim: space.a.dim(),
        b_dim: space.b.dim(),
        a_products: nonzero_table(&space.a),
        b_products: nonzero_table(&space.b),
        mode: cocycles.mode,
        num_candidates: space.size().unwrap_or(u128::MAX),
        examined: cocycles.examined,
        num_cocycles: cocycles.cocycles.len(),
        num_extensions: extensions.extensions.len(),
        num_classes: partition.orbits.len(),
        representatives,
        partition,
        cross_checks: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonabelian::check_cocycle;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn line(square: u32, name: &str) -> Algebra<PrimeField> {
        Algebra::from_table(&f2(), vec![name.into()], |_, _| vec![square]).unwrap()
    }

    fn space(a2: u32, b2: u32) -> CandidateSpace {
        CandidateSpace::new(line(a2, "a"), line(b2, "b")).unwrap()
    }

    #[test]
    fn decode_and_index_are_inverse() {
        let s = CandidateSpace::new(Algebra::zero_product(&f2(), "a", 2).unwrap(), line(1, "b"))
            .unwrap();
        assert_eq!(s.entry_counts(), [4, 4, 2]);
        assert_eq!(s.size(), Some(1024));
        for i in [0u128, 1, 2, 511, 1023] {
            assert_eq!(s.index_of(&s.decode(i)), i);
        }
        let f3 = PrimeField::new(3).unwrap();
        let a = Algebra::zero_product(&f3, "a", 1).unwrap();
        let s3 = CandidateSpace::new(a.clone(), a).unwrap();
        assert_eq!(s3.size(), Some(27));
        assert_eq!(s3.decode(5).phi.coeffs(), &[2]);
        assert_eq!(s3.decode(5).psi.coeffs(), &[1]);
    }

    #[test]
    fn extension_table_agrees_with_build_extension() {
        let s = CandidateSpace::new(line(1, "a"), Algebra::zero_product(&f2(), "b", 2).unwrap())
            .unwrap();
        for i in 0..s.size().unwrap() {
            let built = build_extension(&s.decode(i)).unwrap();
            assert_eq!(s.extension_table(i).product(), built.algebra.product());
        }
    }

    #[test]
    fn hand_members_are_found() {
        let e = enumerate_cocycles(&space(0, 1), &EnumOptions::default()).unwrap();
        let s = space(0, 1);
        let idx: Vec<u128> = e.cocycles.iter().map(|(i, _)| *i).collect();
        assert!(idx.contains(&0));
        // φ = ψ = χ = 1 is digit string 111
        assert!(idx.contains(&7));
        for (i, c) in &e.cocycles {
            assert_eq!(s.decode(*i), *c);
            assert!(check_cocycle(c).unwrap().is_empty());
        }
        assert!(enumerate_cocycles(&space(0, 0), &EnumOptions::default())
            .unwrap()
            .cocycles
            .iter()
            .any(|(i, _)| *i == 0));
    }

    #[test]
    fn budget_is_enforced() {
        let s = space(0, 1);
        let tight = EnumOptions {
            budget: 4,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_cocycles(&s, &tight),
            Err(Error::BudgetExceeded { size: 8, budget: 4 })
        ));
        let sampled = EnumOptions {
            budget: 4,
            samples: Some(3),
            seed: 9,
            jobs: 1,
        };
        let e = enumerate_cocycles(&s, &sampled).unwrap();
        assert!(matches!(
            e.mode,
            SearchMode::Sampled {
                samples: 3,
                seed: 9
            }
        ));
        assert!(e.examined <= 3);
        let too_many = EnumOptions {
            samples: Some(5),
            ..sampled
        };
        assert!(enumerate_cocycles(&s, &too_many).is_err());
    }

    #[test]
    fn census_one_by_one_all_variants() {
        for (a2, b2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let r = census(&space(a2, b2), &EnumOptions::default()).unwrap();
            assert!(r.all_passed(), "{}", r.summary_text());
            assert_eq!(r.num_cocycles, r.num_extensions);
            assert!(r.partition.orbits.iter().any(|o| o.representative == 0));
            let total: usize = r.partition.orbits.iter().map(|o| o.members.len()).sum();
            assert_eq!(total, r.num_cocycles);
        }
    }

    #[test]
    fn census_is_independent_of_jobs_and_order() {
        let s = CandidateSpace::new(
            Algebra::diagonal_idempotents(&f2(), "a", 2).unwrap(),
            line(1, "b"),
        )
        .unwrap();
        let one = census(&s, &EnumOptions::default()).unwrap();
        let four = census(
            &s,
            &EnumOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
        assert!(one.all_passed(), "{}", one.summary_text());
        let e = enumerate_cocycles(&s, &EnumOptions::default()).unwrap();
        let mut shuffled = e.cocycles.clone();
        shuffled.reverse();
        assert_eq!(
            orbit_partition(&s, &shuffled, &EnumOptions::default()).unwrap(),
            one.partition
        );
    }

    #[test]
    fn non_associative_factor_is_rejected() {
        let bad = Algebra::from_table(&f2(), vec!["x".into(), "y".into()], |i, j| match (i, j) {
            (0, 0) => vec![0, 1],
            (1, 0) => vec![1, 0],
            _ => vec![0, 0],
        })
        .unwrap();
        let s = CandidateSpace::new(bad, line(1, "b")).unwrap();
        assert_eq!(
            enumerate_cocycles(&s, &EnumOptions::default()).err(),
            Some(Error::NotAssociative("A"))
        );
    }
}
