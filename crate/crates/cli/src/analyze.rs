use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sal_core::algebra::{
    build_t_beta, check_invariance, gram_identity_check, gram_matches, is_simple, killing_form, killing_gram_factor,
    tight_frame_check, Algebra, BilinearForm, SimplicityVerdict,
};
use sal_core::axial::{
    decompose_all, fusion_table_for, graded_ideal_analysis, miyamoto_group, plus_is_subalgebra, transposition_relations,
    verify_fusion_all, AxialError, LawKind,
};
use sal_core::designs::SteinerTripleSystem;
use sal_core::exact::{format_scalar, q, qi, Scalar, Vector};
use sal_core::idempotents::{ag23_decomposition, block_catalog, gamma_block_spectrum, parallel_classes, square_zero_scan};
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

/// Check names with the statement each one verifies.
pub const CHECKS: [(&str, &str); 13] = [
    ("exactness", "tr L(e_k) = 0 for every basis element"),
    ("killing_gram", "Gram matrix of the Killing form is (ω/(n−2))(nI − J) on e₁..e_{n−1}"),
    ("invariance", "κ(x∘y, z) = κ(x, y∘z) on all basis triples"),
    ("positive_definite", "the Killing form is positive definite"),
    ("tight_frame", "Σᵢ κ(x, eᵢ)eᵢ = (nω/(n−2))x on seeded random rational x"),
    ("axes", "each L(eᵢ) splits into eigenspaces for 1, β₊, β₋ with the expected spanning sets"),
    ("fusion", "every axis obeys the graded law, or the Jordan law at β = 1/(n−1)"),
    ("miyamoto_group", "the point involutions satisfy the 3-transposition relations (Hall systems)"),
    ("simplicity", "the algebra is simple unless β₊ = 1 or β₋ = 1"),
    ("block_catalog", "every block-span idempotent and square-zero element checks out twice"),
    ("plane_decomposition", "block idempotent relations on the affine plane of order 3"),
    ("gamma_spectrum", "product relations and spectrum of L(e⁰_B) on a Hall system"),
    ("graded_ideals", "ideal structure at β = −(n−1)/(n−3) on a Hall system"),
];

const FRAME_SAMPLES: usize = 10;
const FRAME_SEED: u64 = 0x5A1_F4A3E;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Excluded,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: CheckStatus,
    pub details: Value,
}

impl Verdict {
    fn from_bool(ok: bool, details: Value) -> Self {
        Verdict { status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, details }
    }

    fn excluded(reason: &str) -> Self {
        Verdict { status: CheckStatus::Excluded, details: json!({ "reason": reason }) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemSummary {
    pub n: usize,
    pub b: usize,
    pub r: usize,
    pub hall: bool,
}

impl SystemSummary {
    pub fn of(s: &SteinerTripleSystem) -> Self {
        SystemSummary { n: s.n(), b: s.blocks().len(), r: s.replication(), hall: s.is_hall() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub system: SystemSummary,
    #[serde(serialize_with = "sal_core::exact::serialize_scalar")]
    pub beta: Scalar,
    pub params: BTreeMap<&'static str, String>,
    pub verdicts: BTreeMap<&'static str, Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

impl AnalysisReport {
    /// Nothing failed or came back undecided.
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|v| matches!(v.status, CheckStatus::Pass | CheckStatus::Excluded))
    }
}

struct Context<'a> {
    s: &'a SteinerTripleSystem,
    a: Algebra,
    kappa: BilinearForm,
    cap: usize,
}

/// Runs `selected` checks (all when empty) for one value of β.
pub fn analyze(
    s: &SteinerTripleSystem,
    beta: &Scalar,
    selected: &[String],
    cap: usize,
    timings: bool,
) -> Result<AnalysisReport, CliError> {
    if let Some(bad) = selected.iter().find(|c| !CHECKS.iter().any(|(name, _)| name == c)) {
        return Err(CliError::Usage(format!("unknown check `{bad}` (see `sal checks`)")));
    }
    let a = build_t_beta(s, beta.clone())?;
    let kappa = killing_form(&a);
    let ctx = Context { s, a, kappa, cap };
    let p = ctx.a.params();
    let params = BTreeMap::from([
        ("alpha", format_scalar(&p.alpha)),
        ("beta_minus", format_scalar(&p.beta_minus)),
        ("beta_plus", format_scalar(&p.beta_plus)),
        ("omega", format_scalar(&p.omega())),
    ]);
    let mut verdicts = BTreeMap::new();
    let mut times = BTreeMap::new();
    for (name, _) in CHECKS {
        if !selected.is_empty() && !selected.iter().any(|c| c == name) {
            verdicts.insert(name, Verdict::excluded("not requested"));
            continue;
        }
        let start = Instant::now();
        let verdict = run_check(&ctx, name)?;
        times.insert(name, start.elapsed().as_millis());
        verdicts.insert(name, verdict);
    }
    Ok(AnalysisReport {
        system: SystemSummary::of(s),
        beta: beta.clone(),
        params,
        verdicts,
        timings_ms: timings.then_some(times),
    })
}

fn run_check(ctx: &Context, name: &str) -> Result<Verdict, CliError> {
    match name {
        "exactness" => Ok(exactness(ctx)),
        "killing_gram" => killing_gram(ctx),
        "invariance" => invariance(ctx),
        "positive_definite" => Ok(positive_definite(ctx)),
        "tight_frame" => tight_frame(ctx),
        "axes" => axes(ctx),
        "fusion" => fusion(ctx),
        "miyamoto_group" => group(ctx),
        "simplicity" => simplicity(ctx),
        "block_catalog" => catalog(ctx),
        "plane_decomposition" => plane(ctx),
        "gamma_spectrum" => gamma(ctx),
        "graded_ideals" => graded(ctx),
        other => unreachable!("unlisted check {other}"),
    }
}

fn n_of(ctx: &Context) -> usize {
    ctx.s.n()
}

fn exactness(ctx: &Context) -> Verdict {
    let traces = ctx.a.basis_traces();
    let nonzero = traces.iter().position(|t| !t.is_zero());
    Verdict::from_bool(nonzero.is_none(), json!({ "first_nonzero_trace": nonzero }))
}

fn killing_gram(ctx: &Context) -> Result<Verdict, CliError> {
    let factor = killing_gram_factor(&ctx.a)?;
    let scaled = gram_matches(&ctx.a, &ctx.kappa, &factor)?;
    let unscaled = gram_identity_check(&ctx.a, &ctx.kappa)?;
    Ok(Verdict::from_bool(
        scaled.holds(),
        json!({
            "factor": format_scalar(&factor),
            "mismatch": scaled.witness(),
            "matches_omega_times_nI_minus_J": unscaled.holds(),
        }),
    ))
}

fn invariance(ctx: &Context) -> Result<Verdict, CliError> {
    let outcome = check_invariance(&ctx.a, &ctx.kappa)?;
    Ok(Verdict::from_bool(outcome.holds(), json!({ "triples": ctx.a.dim().pow(3), "witness": outcome.witness() })))
}

fn positive_definite(ctx: &Context) -> Verdict {
    Verdict::from_bool(ctx.kappa.is_positive_definite(), json!({ "nondegenerate": ctx.kappa.is_nondegenerate() }))
}

/// Seeded from `n` and β so every run draws the same vectors.
fn frame_samples(dim: usize, n: usize, beta: &Scalar) -> Vec<Vector> {
    let tag = format_scalar(beta).bytes().fold(n as u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(FRAME_SEED ^ tag);
    (0..FRAME_SAMPLES)
        .map(|_| Vector::new((0..dim).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect()))
        .collect()
}

fn tight_frame(ctx: &Context) -> Result<Verdict, CliError> {
    let p = ctx.a.params();
    let constant = qi(p.n as i64) * p.omega() / qi(p.n as i64 - 2);
    let mut failures = 0;
    for x in frame_samples(ctx.a.dim(), p.n, &p.beta) {
        if !tight_frame_check(&ctx.a, &ctx.kappa, &x)? {
            failures += 1;
        }
    }
    Ok(Verdict::from_bool(
        failures == 0,
        json!({ "samples": FRAME_SAMPLES, "failures": failures, "constant": format_scalar(&constant) }),
    ))
}

fn spectrum_json(spectrum: &[(Scalar, usize)]) -> Value {
    Value::Array(spectrum.iter().map(|(l, m)| json!([format_scalar(l), m])).collect())
}

fn axes(ctx: &Context) -> Result<Verdict, CliError> {
    let all = decompose_all(&ctx.a)?;
    let bad = all.iter().find(|d| !d.kernels_match || !d.is_consistent(&ctx.a)).map(|d| d.point);
    let first = &all[0];
    let (d1, dp, dm) = first.dims();
    Ok(Verdict::from_bool(
        bad.is_none(),
        json!({
            "case": first.exceptional_case,
            "dims": [d1, dp, dm],
            "spectrum": spectrum_json(&first.spectrum()),
            "failing_axis": bad,
        }),
    ))
}

fn fusion(ctx: &Context) -> Result<Verdict, CliError> {
    let law = match fusion_table_for(n_of(ctx), &ctx.a.params().beta) {
        Ok(law) => law,
        Err(AxialError::ExcludedBeta { .. }) => return Ok(Verdict::excluded("eigenvalues 1, β₊, β₋ are not distinct")),
        Err(e) => return Err(e.into()),
    };
    let verdicts = verify_fusion_all(&ctx.a, &law)?;
    let failure = verdicts.iter().find(|v| !v.ok);
    let mut plus_closed = None;
    if law.kind == LawKind::Jordan {
        let mut closed = true;
        for i in 1..=n_of(ctx) {
            closed &= plus_is_subalgebra(&ctx.a, i)?;
        }
        plus_closed = Some(closed);
    }
    Ok(Verdict::from_bool(
        failure.is_none() && plus_closed != Some(false),
        json!({ "law": law.kind, "first_failure": failure, "plus_is_subalgebra": plus_closed }),
    ))
}

fn group(ctx: &Context) -> Result<Verdict, CliError> {
    if !ctx.s.is_hall() {
        return Ok(Verdict::excluded("not a Hall triple system"));
    }
    let g = match miyamoto_group(ctx.s, ctx.cap) {
        Ok(g) => g,
        Err(AxialError::ClosureCapExceeded(cap)) => {
            return Ok(Verdict { status: CheckStatus::Undecided, details: json!({ "closure_cap_exceeded": cap }) })
        }
        Err(e) => return Err(e.into()),
    };
    let relations = transposition_relations(ctx.s);
    Ok(Verdict::from_bool(
        relations.ok() && g.acts_by_automorphisms,
        json!({
            "order": g.order,
            "commutator_order": g.commutator_order,
            "abelianization_order": g.abelianization_order,
            "relations": relations,
        }),
    ))
}

/// `β₊ = 1` or `β₋ = 1`, where simplicity is not guaranteed.
fn simplicity_may_fail(ctx: &Context) -> bool {
    let p = ctx.a.params();
    p.beta_plus.is_one() || p.beta_minus.is_one()
}

fn simplicity(ctx: &Context) -> Result<Verdict, CliError> {
    let verdict = is_simple(&ctx.a)?;
    let mut details = json!({ "verdict": verdict.label() });
    let status = match &verdict {
        SimplicityVerdict::Simple { family } => {
            details["spanning_family"] = json!(family);
            CheckStatus::Pass
        }
        SimplicityVerdict::NotSimple { ideal } => {
            details["ideal_dim"] = json!(ideal.dim());
            if n_of(ctx) == 9 && ctx.a.params().beta.is_one() && parallel_classes(ctx.s).is_some() {
                if let Some(ds) = ag23_decomposition(&ctx.a)?.direct_sum {
                    details["decomposition"] = json!(ds.summand_dims);
                }
            }
            let genuine = ideal.is_proper() && ideal.is_closed_in(&ctx.a);
            if genuine && simplicity_may_fail(ctx) {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            }
        }
        SimplicityVerdict::Undecided => CheckStatus::Undecided,
    };
    Ok(Verdict { status, details })
}

fn catalog(ctx: &Context) -> Result<Verdict, CliError> {
    if n_of(ctx) <= 3 {
        return Ok(Verdict::excluded("needs n > 3"));
    }
    let mut entries = 0;
    let mut unverified = None;
    for b in ctx.s.blocks() {
        let cat = block_catalog(&ctx.a, b)?;
        entries += cat.entries.len();
        if unverified.is_none() {
            unverified = cat.entries.iter().find(|e| !e.verified).map(|e| (cat.block, e.label));
        }
    }
    let square_zero = square_zero_scan(&ctx.a)?.len();
    Ok(Verdict::from_bool(
        unverified.is_none(),
        json!({ "entries": entries, "square_zero": square_zero, "unverified": unverified }),
    ))
}

fn plane(ctx: &Context) -> Result<Verdict, CliError> {
    if n_of(ctx) != 9 || parallel_classes(ctx.s).is_none() {
        return Ok(Verdict::excluded("only for the affine plane of order 3"));
    }
    if (qi(6) * &ctx.a.params().beta + Scalar::one()).is_zero() {
        return Ok(Verdict::excluded("block idempotents undefined at this β"));
    }
    let r = ag23_decomposition(&ctx.a)?;
    let ds_ok = r.direct_sum.as_ref().is_none_or(|d| d.ok());
    Ok(Verdict::from_bool(
        r.class_sums_vanish && r.within_class.holds() && r.cross_class.holds() && ds_ok,
        serde_json::to_value(&r)?,
    ))
}

fn gamma(ctx: &Context) -> Result<Verdict, CliError> {
    if !ctx.s.is_hall() || n_of(ctx) <= 3 {
        return Ok(Verdict::excluded("needs a Hall triple system with n > 3"));
    }
    if ctx.a.block_sum_square_factor().is_zero() {
        return Ok(Verdict::excluded("block idempotents undefined at this β"));
    }
    let r = gamma_block_spectrum(&ctx.a, &ctx.s.blocks()[0])?;
    Ok(Verdict::from_bool(
        r.relations.holds() && r.eigenvectors_ok && r.table_match != Some(false),
        serde_json::to_value(&r)?,
    ))
}

fn graded(ctx: &Context) -> Result<Verdict, CliError> {
    let n = n_of(ctx);
    if !ctx.s.is_hall() || n <= 3 || !ctx.a.params().beta_minus.is_one() {
        return Ok(Verdict::excluded("only at β = −(n−1)/(n−3) on a Hall system"));
    }
    let r = match graded_ideal_analysis(&ctx.a, ctx.cap) {
        Ok(r) => r,
        Err(AxialError::ClosureCapExceeded(cap)) => {
            return Ok(Verdict { status: CheckStatus::Undecided, details: json!({ "closure_cap_exceeded": cap }) })
        }
        Err(e) => return Err(e.into()),
    };
    let status = match (&r.paired, r.verdict) {
        (_, "undecided") => CheckStatus::Undecided,
        (Some(p), _) if !p.ok() => CheckStatus::Fail,
        _ => CheckStatus::Pass,
    };
    Ok(Verdict { status, details: serde_json::to_value(&r)? })
}
