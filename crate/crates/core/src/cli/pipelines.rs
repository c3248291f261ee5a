use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use super::report::{Check, Deformation, DimRow, Generator, Instance, Report, Verdict, SCHEMA_VERSION};
use crate::centre::{is_central, CentreBasis};
use crate::coeff::{AnyField, Field, FieldScalar, QParams};
use crate::ext::ExtAlgebra;
use crate::findim::{
    build_deformed, build_lambda_q, check_rescaling, hom_dimension, is_frobenius, left_socle, radical,
    rescaling_isomorphism, socle_quotient, two_dim_simple_check, DeformationParams, FindimError,
    FrobeniusCertificate, Rescaling, StructureConstAlgebra,
};
use crate::structure::{
    build_generators, classify_case, growth_degree, krull_dimension, partial_sum_samples,
    verify_finite_generation, verify_structure_theorem, CentreShape, StructureReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Centre,
    Structure,
    Socle,
    Deform,
    Iso,
    Frobenius,
    Finitegen,
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Centre => "centre",
            Command::Structure => "structure",
            Command::Socle => "socle",
            Command::Deform => "deform",
            Command::Iso => "iso",
            Command::Frobenius => "frobenius",
            Command::Finitegen => "finitegen",
            Command::Report => "report",
        }
    }
}

/// A parsed instance, ready to run.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub command: Command,
    pub params: QParams<AnyField>,
    pub deformation: Option<DeformationParams<FieldScalar>>,
    pub max_degree: usize,
    pub seed: u64,
    pub timing: bool,
}

struct Run {
    inst: InstanceSpec,
    alg: Arc<ExtAlgebra<AnyField>>,
    report: Report,
    times: BTreeMap<String, u64>,
}

impl Run {
    fn field(&self) -> &AnyField {
        self.inst.params.field()
    }

    fn fmt(&self, x: &FieldScalar) -> String {
        self.field().format(x)
    }

    fn timed<T>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.times.insert(stage.into(), start.elapsed().as_micros() as u64);
        out
    }

    fn check(&mut self, c: Check) {
        self.report.checks.push(c);
    }

    fn lambda_q(&self) -> Result<StructureConstAlgebra<AnyField>, String> {
        build_lambda_q(&self.inst.params).map_err(|e| e.to_string())
    }

    /// The deformed algebra when parameters were given, else `Lambda_q`.
    fn target_algebra(&self) -> Result<StructureConstAlgebra<AnyField>, String> {
        match &self.inst.deformation {
            Some(dp) => build_deformed(self.field(), self.inst.params.m(), dp).map_err(|e| e.to_string()),
            None => self.lambda_q(),
        }
    }

    fn trivial_lambda(&self) -> Result<StructureConstAlgebra<AnyField>, String> {
        let q = QParams::trivial(self.field().clone(), self.inst.params.m()).map_err(|e| e.to_string())?;
        build_lambda_q(&q).map_err(|e| e.to_string())
    }
}

pub fn execute(inst: InstanceSpec) -> Result<Report, String> {
    let params = &inst.params;
    let f = params.field();
    let case = classify_case(params.m(), f.characteristic(), params.order());
    let report = Report {
        instance: Instance {
            schema_version: SCHEMA_VERSION,
            command: inst.command.name().into(),
            m: params.m(),
            field: f.describe(),
            char: f.characteristic(),
            q: params.format_q(),
            zeta: f.format(params.zeta()),
            d: params.order().to_string(),
            max_degree: inst.max_degree,
            seed: inst.seed,
            deformation: inst.deformation.as_ref().map(|dp| Deformation {
                t: f.format(&dp.t),
                b1: f.format(&dp.b1),
                b2: f.format(&dp.b2),
            }),
        },
        case: case.as_str().into(),
        generators: vec![],
        epsilon: None,
        relation: None,
        dims: vec![],
        checks: vec![],
        timing: BTreeMap::new(),
    };
    let alg = Arc::new(ExtAlgebra::new(params.clone()));
    let timing = inst.timing;
    let mut run = Run {
        inst,
        alg,
        report,
        times: BTreeMap::new(),
    };
    match run.inst.command {
        Command::Centre => centre(&mut run),
        Command::Structure => structure(&mut run),
        Command::Socle => socle(&mut run)?,
        Command::Deform => deform(&mut run)?,
        Command::Iso => iso(&mut run)?,
        Command::Frobenius => frobenius(&mut run)?,
        Command::Finitegen => finitegen(&mut run),
        Command::Report => {
            structure(&mut run);
            finitegen(&mut run);
            iso(&mut run)?;
            frobenius(&mut run)?;
            socle(&mut run)?;
            if run.inst.deformation.is_some() {
                deform(&mut run)?;
            }
        }
    }
    if timing {
        run.report.timing = run.times;
    }
    Ok(run.report)
}

fn dim_rows(solver: &[usize], hilbert: &[u64]) -> Vec<DimRow> {
    solver
        .iter()
        .zip(hilbert)
        .enumerate()
        .map(|(n, (&s, &h))| DimRow {
            n,
            solver_dim: s,
            hilbert_dim: h,
        })
        .collect()
}

fn hilbert_check(solver: &[usize], hilbert: &[u64]) -> Check {
    match solver.iter().zip(hilbert).position(|(&a, &b)| a as u64 != b) {
        None => Check::new("hilbert-series", Verdict::Pass).detail(format!("degrees 0..={}", solver.len() - 1)),
        Some(n) => Check::new("hilbert-series", Verdict::Fail).detail(format!(
            "degree {n}: solver {} vs series {}",
            solver[n], hilbert[n]
        )),
    }
}

fn centre(run: &mut Run) {
    let n = run.inst.max_degree;
    let alg = run.alg.clone();
    let basis = run.timed("centre", |_| CentreBasis::compute(&alg, n));
    let shape = match build_generators(&alg) {
        Ok(g) => CentreShape::Presented(g.presented_ring()),
        Err(_) => CentreShape::Trivial,
    };
    let solver = basis.dims();
    let hilbert = shape.hilbert_coefficients(n);
    // E is generated in lengths 0 and 1
    let closed = run.timed("closure", |_| basis.iter().all(|(_, z)| is_central(z, 1).unwrap_or(false)));
    run.report.dims = dim_rows(&solver, &hilbert);
    run.check(Check::new("centre-closure", Verdict::from_bool(closed)).detail(format!(
        "{} basis elements commute with idempotents and arrows",
        solver.iter().sum::<usize>()
    )));
    run.check(hilbert_check(&solver, &hilbert));
}

fn structure(run: &mut Run) {
    let n = run.inst.max_degree;
    let alg = run.alg.clone();
    let sr: StructureReport<AnyField> = run.timed("structure", |_| verify_structure_theorem(&alg, n));
    let f = run.field().clone();
    if let Some(g) = &sr.generators {
        run.report.generators = [("x", &g.x, g.lx), ("y", &g.y, g.ly), ("w", &g.w, g.lw)]
            .into_iter()
            .map(|(name, z, length)| Generator {
                name: name.into(),
                length,
                element: z.format(),
            })
            .collect();
        run.report.epsilon = Some(f.format(&g.epsilon));
        run.report.relation = Some(g.relation_string());
    }
    run.report.dims = dim_rows(&sr.solver_dims, &sr.hilbert_dims);

    match (&sr.generators, sr.generators_central) {
        (Some(_), Some(c)) => {
            let bad: Vec<&str> = ["x", "y", "w"].into_iter().zip(c).filter(|(_, ok)| !ok).map(|(s, _)| s).collect();
            let mut chk = Check::new("generators-central", Verdict::from_bool(bad.is_empty()));
            if !bad.is_empty() {
                chk = chk.detail(format!("not central: {}", bad.join(", ")));
            }
            run.check(chk);
        }
        _ => run.check(Check::new("generators-central", Verdict::Skipped("zeta is not a root of unity".into()))),
    }
    match (&sr.generators, &sr.relation) {
        (Some(g), Some(r)) => {
            let mut chk = Check::new("relation", Verdict::from_bool(r.holds)).subject(g.relation_string());
            if let Some((e, rc)) = &sr.rederived {
                chk = chk.detail(format!(
                    "with epsilon = {} the relation {}",
                    f.format(e),
                    if rc.holds { "holds" } else { "also fails" }
                ));
            } else if !r.holds {
                chk = chk.detail(format!("difference {}", r.difference.format()));
            }
            run.check(chk);
        }
        _ => run.check(Check::new("relation", Verdict::Skipped("zeta is not a root of unity".into()))),
    }
    run.check(hilbert_check(&sr.solver_dims, &sr.hilbert_dims));
    run.check(Check::new("structure-theorem", Verdict::from_bool(sr.pass())).detail(format!("N={n}")));

    let shape = sr.shape();
    let krull = krull_dimension(&shape);
    let expected = if sr.generators.is_some() { 2 } else { 0 };
    let period = shape.growth_period();
    let samples = partial_sum_samples(&sr.solver_dims, period);
    let growth = if sr.dims_match() { growth_degree(&samples) } else { None };
    let verdict = match growth {
        _ if krull != expected => Verdict::Fail,
        Some(g) => Verdict::from_bool(g == krull),
        None if !sr.dims_match() => Verdict::Fail,
        None => Verdict::Skipped(format!("growth needs N >= {}", (krull + 2) * period - 1)),
    };
    let growth_text = match growth {
        Some(g) => format!("partial sums at multiples of {period} have degree {g}"),
        None => format!("{} partial sums at multiples of {period}", samples.len()),
    };
    run.check(
        Check::new("krull-dimension", verdict)
            .subject(krull.to_string())
            .detail(format!("pole order of the Hilbert series; {growth_text}")),
    );
}

fn finitegen(run: &mut Run) {
    let n = run.inst.max_degree;
    let alg = run.alg.clone();
    let fg = run.timed("finitegen", |_| verify_finite_generation(&alg, n));
    let expected = run.inst.params.order().finite().is_some();
    let subject = if fg.holds {
        "E is finite over Z_gr"
    } else {
        "E is not finite over Z_gr"
    };
    run.check(
        Check::new("finite-generation", Verdict::from_bool(fg.holds == expected))
            .subject(subject)
            .detail(format!("N={n}; {}", fg.witness)),
    );
}

fn iso(run: &mut Run) -> Result<(), String> {
    let params = run.inst.params.clone();
    let f = run.field().clone();
    let a = build_lambda_q(&params.normalized()).map_err(|e| e.to_string())?;
    let b = run.lambda_q()?;
    let m = params.m();
    let r = Rescaling {
        lambda: (0..m).map(|i| params.q_interval_product(0, i + 1)).collect(),
        mu: vec![f.one(); m],
    };
    let ok = check_rescaling(&a, &b, &r).map_err(|e| e.to_string())?;
    run.check(
        Check::new("normalisation-map", Verdict::from_bool(ok))
            .subject("Lambda_(zeta,1,...,1) -> Lambda_q, a_i -> q_0...q_i a_i"),
    );
    let found = run.timed("iso", |_| rescaling_isomorphism(&a, &b));
    let chk = match found {
        Ok(Some(r)) => Check::new("rescaling-search", Verdict::Pass).detail(format!(
            "lambda = ({}), mu = ({})",
            r.lambda.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(", "),
            r.mu.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(", ")
        )),
        Ok(None) => Check::new("rescaling-search", Verdict::Fail).detail("no rescaling exists"),
        Err(e) => Check::new("rescaling-search", Verdict::Skipped(e.to_string())),
    };
    run.check(chk);
    Ok(())
}

fn frobenius(run: &mut Run) -> Result<(), String> {
    let alg = run.target_algebra()?;
    let seed = run.inst.seed;
    let res = run.timed("frobenius", |_| is_frobenius(&alg, seed));
    let chk = match res {
        Ok(r) => {
            let detail = match &r.certificate {
                FrobeniusCertificate::Functional(l) => format!(
                    "method {}; functional ({})",
                    r.method,
                    l.iter().map(|x| run.fmt(x)).collect::<Vec<_>>().join(", ")
                ),
                FrobeniusCertificate::DeterminantVanishes => {
                    format!("method {}; Gram determinant vanishes identically", r.method)
                }
            };
            Check::new("frobenius", Verdict::from_bool(r.is_frobenius)).detail(detail)
        }
        Err(e) => Check::new("frobenius", Verdict::Skipped(e.to_string())),
    };
    run.check(chk);
    Ok(())
}

fn format_subspace(alg: &StructureConstAlgebra<AnyField>, basis: &[crate::linalg::SparseVec<FieldScalar>]) -> String {
    basis.iter().map(|v| alg.format_vec(v)).collect::<Vec<_>>().join(", ")
}

/// Socle of the target algebra and its quotient compared with `Lambda/soc`.
fn socle(run: &mut Run) -> Result<(), String> {
    let alg = run.target_algebra()?;
    let m = run.inst.params.m();
    let rad = radical(&alg);
    let soc = left_socle(&alg);
    let (rad, soc) = match (rad, soc) {
        (Ok(r), Ok(s)) => (r, s),
        (Err(e), _) | (_, Err(e)) => {
            run.check(Check::new("socle", Verdict::Skipped(e.to_string())));
            return Ok(());
        }
    };
    let s_span = (3 * m..4 * m).all(|k| soc.contains(&alg.basis_vector(k)));
    let exact = s_span && soc.dim() == m;
    run.check(
        Check::new("socle", Verdict::from_bool(soc.dim() > 0))
            .subject(format!("dim rad = {}, dim soc = {}", rad.dim(), soc.dim()))
            .detail(format!("basis {}", format_subspace(&alg, &soc.basis()))),
    );
    if run.inst.deformation.is_none() {
        run.check(Check::new("socle-basis", Verdict::from_bool(exact)).subject("soc = span{a_i abar_i}"));
    }
    let chk = match socle_quotient(&alg) {
        Err(FindimError::SocleNotIdeal) => Check::new("socle-quotient", Verdict::Fail).detail("socle is not a two-sided ideal"),
        Err(e) => Check::new("socle-quotient", Verdict::Skipped(e.to_string())),
        Ok(quot) => {
            let base = socle_quotient(&run.trivial_lambda()?).map_err(|e| e.to_string())?;
            match rescaling_isomorphism(&quot, &base) {
                Ok(Some(_)) => Check::new("socle-quotient", Verdict::Pass).subject("A/soc A ~ Lambda/soc Lambda by rescaling"),
                Ok(None) => Check::new("socle-quotient", Verdict::Fail).detail("no rescaling onto Lambda/soc Lambda"),
                Err(FindimError::ShapeMismatch) => Check::new(
                    "socle-quotient",
                    Verdict::Skipped("socle is not spanned by the a_i abar_i".into()),
                ),
                Err(e) => Check::new("socle-quotient", Verdict::Skipped(e.to_string())),
            }
        }
    };
    run.check(chk);
    Ok(())
}

/// The dichotomy for a deformation: with `t b2 != 0` the ideals `A a_i` are
/// 2-dimensional simple and pairwise non-isomorphic and the socle grows.
fn deform(run: &mut Run) -> Result<(), String> {
    let f = run.field().clone();
    let dp = run
        .inst
        .deformation
        .clone()
        .ok_or("deform needs deformation parameters")?;
    let m = run.inst.params.m();
    let alg = run.timed("deform", |_| build_deformed(&f, m, &dp)).map_err(|e| e.to_string())?;
    run.check(Check::new("associativity", Verdict::Pass).detail(format!("dim {}", alg.dim())));
    if f.is_zero(&f.mul(&dp.t, &dp.b2)) {
        run.check(Check::new("simple-ideals", Verdict::Skipped("t*b2 = 0".into())));
        return Ok(());
    }
    let mut not_simple = vec![];
    for i in 0..m {
        match two_dim_simple_check(&alg, i) {
            Ok(true) => {}
            Ok(false) => not_simple.push(i.to_string()),
            Err(e) => {
                run.check(Check::new("simple-ideals", Verdict::Skipped(e.to_string())));
                return Ok(());
            }
        }
    }
    let mut chk = Check::new("simple-ideals", Verdict::from_bool(not_simple.is_empty()))
        .subject("A a_i is 2-dimensional simple");
    if !not_simple.is_empty() {
        chk = chk.detail(format!("fails for i = {}", not_simple.join(", ")));
    }
    run.check(chk);

    let mut clash = vec![];
    for i in 0..m {
        for j in 0..m {
            let h = hom_dimension(&alg, i, j).map_err(|e| e.to_string())?;
            if h != usize::from(i == j) {
                clash.push(format!("Hom(A a_{i}, A a_{j}) = {h}"));
            }
        }
    }
    let mut chk = Check::new("pairwise-non-isomorphic", Verdict::from_bool(clash.is_empty()));
    if !clash.is_empty() {
        chk = chk.detail(clash.join("; "));
    }
    run.check(chk);

    match left_socle(&alg) {
        Ok(soc) => run.check(
            Check::new("socle-growth", Verdict::from_bool(soc.dim() > m))
                .subject(format!("dim soc = {} > {m}", soc.dim()))
                .detail(format!("at least 2m = {}: {}", 2 * m, if soc.dim() >= 2 * m { "yes" } else { "no" })),
        ),
        Err(e) => run.check(Check::new("socle-growth", Verdict::Skipped(e.to_string()))),
    }
    Ok(())
}
