use std::fs;
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use halg_core::affinization::{AffineMode, Affinization};
use halg_core::cext::{
    extend, solve_cocycle_space, theorem51_relations, verify_theorem51, CextError, Cocycle,
    ExtendOptions,
};
use halg_core::conformal::{
    gd_from_quadratic, quadratic_from_gd, solve_alpha, ConformalAlgebra, ConformalElement,
    ConformalError,
};
use halg_core::constructions::{
    derivation_construction, poisson_construction, star_constructions, supercommutator_gd,
    yau_twist, Certified, ConstructionError, GDStructure, StarCandidate,
};
use halg_core::exactalg::{parse_scalar, Scalar};
use halg_core::par::{self, ExecMode};
use halg_core::random::Generator;
use halg_core::superalgebra::{
    check_gd_compatibility, check_hom_associative, check_hom_lie_super, check_hom_novikov_super,
    check_hom_poisson, EvenMap, SuperAlgebra, SuperBasis, Vector,
};

use crate::load::{self, validation, Derived, Loaded};
use crate::report::{Report, Solutions, Table, VerdictOut};
use crate::spec::{self, CocycleSpec};
use crate::{Cli, CliError, Command, Construction, Roles, Structure, Suite};

const DEFAULT_SEED: u64 = 0x5eed;

/// Execute a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    if cli.sequential {
        par::set_mode(ExecMode::Sequential);
    }
    let start = Instant::now();
    let roles = &cli.roles;
    let mut report = match &cli.command {
        Command::Check {
            file,
            structure,
            classical,
        } => check(&load::load(file)?, roles, *structure, *classical)?,
        Command::Construct {
            kind,
            file,
            shift,
            map,
            output,
        } => construct(
            &load::load(file)?,
            roles,
            *kind,
            shift.as_deref(),
            map.as_deref(),
            output.as_deref(),
        )?,
        Command::Affinize {
            file,
            delta,
            window,
        } => {
            let mode = if *delta {
                AffineMode::Delta
            } else {
                parse_window(window.as_deref().unwrap_or_default())?
            };
            affinize(&load::load(file)?, roles, &mode)?
        }
        Command::Conformalize { file, output } => {
            conformalize(&load::load(file)?, roles, output.as_deref())?
        }
        Command::GdExtract { file, output } => {
            gd_extract(&load::load(file)?, roles, output.as_deref())?
        }
        Command::SolveAlpha { file, degree } => {
            solve_alpha_cmd(&load::load(file)?, roles, *degree)?
        }
        Command::Cocycles {
            file,
            max_degree,
            output,
        } => cocycles(&load::load(file)?, roles, *max_degree, output.as_deref())?,
        Command::Extend {
            file,
            cocycle,
            alpha_center,
            output,
        } => extend_cmd(
            &load::load(file)?,
            roles,
            cocycle,
            alpha_center.as_deref(),
            output.as_deref(),
        )?,
        Command::VerifyThm51 { file, cocycle } => verify_thm51(&load::load(file)?, roles, cocycle)?,
        Command::Property { suite, count } => {
            property(*suite, *count, cli.seed.unwrap_or(DEFAULT_SEED))
        }
    };
    report.settle();
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn fail_with(report: &mut Report, message: impl Into<String>) {
    report.verdict = Some(VerdictOut::Fail);
    report.note(message);
}

fn classical(a: &SuperAlgebra, alpha: &str) -> SuperAlgebra {
    a.clone().with_map(alpha, EvenMap::identity(a.dim()))
}

fn check(
    doc: &Loaded,
    roles: &Roles,
    structure: Structure,
    classical_mode: bool,
) -> Result<Report, CliError> {
    let mut report = Report::new(format!("check {}", value_name(structure)));
    let Roles {
        bracket,
        circ,
        mul,
        alpha,
    } = roles;
    if structure == Structure::Conformal {
        let mut r = doc.conformal(roles)?;
        if classical_mode {
            let id = (0..r.dim())
                .map(|i| (i, ConformalElement::generator(i)))
                .collect::<Vec<_>>();
            r = r.with_alpha_table(id).map_err(validation)?;
        }
        report.check("conformal-skew-symmetry", &r.check_skew());
        report.check("conformal-hom-jacobi", &r.check_jacobi());
        return Ok(report);
    }
    if structure == Structure::Gd {
        let g = match doc.gd(roles)? {
            Derived::Ok(g) => g,
            Derived::NotQuadratic(e) => {
                fail_with(&mut report, e.to_string());
                return Ok(report);
            }
        };
        let a = if classical_mode {
            classical(&g.algebra, &g.alpha)
        } else {
            g.algebra.clone()
        };
        report.check(
            "hom-lie-super",
            &check_hom_lie_super(&a, &g.bracket, &g.alpha)?,
        );
        report.check(
            "hom-novikov-super",
            &check_hom_novikov_super(&a, &g.circ, &g.alpha)?,
        );
        report.check(
            "gd-compatibility",
            &check_gd_compatibility(&a, &g.bracket, &g.circ, &g.alpha)?,
        );
        return Ok(report);
    }
    let mut a = doc.superalgebra()?.clone();
    if classical_mode || structure == Structure::NovikovSuper {
        a = classical(&a, alpha);
    }
    let (name, r) = match structure {
        Structure::HomLieSuper => ("hom-lie-super", check_hom_lie_super(&a, bracket, alpha)?),
        Structure::HomNovikovSuper | Structure::NovikovSuper => (
            "hom-novikov-super",
            check_hom_novikov_super(&a, circ, alpha)?,
        ),
        Structure::HomAssoc => (
            "hom-associative",
            check_hom_associative(&a, mul, alpha, false)?,
        ),
        Structure::HomPoisson => ("hom-poisson", check_hom_poisson(&a, mul, bracket, alpha)?),
        Structure::Gd | Structure::Conformal => unreachable!("handled above"),
    };
    report.check(name, &r);
    Ok(report)
}

fn scalar_arg(lit: Option<&str>, params: &[String], default: Scalar) -> Result<Scalar, CliError> {
    lit.map_or(Ok(default), |s| {
        parse_scalar(s, params).map_err(|e| CliError::Usage(format!("bad scalar `{s}`: {e}")))
    })
}

fn product_table(
    a: &SuperAlgebra,
    name: &str,
    label: impl Fn(&str, &str) -> String,
) -> Vec<(String, String)> {
    a.products
        .get(name)
        .map(|t| {
            t.entries()
                .map(|((i, j), v)| (label(a.basis.name(i), a.basis.name(j)), render(v, &a.basis)))
                .collect()
        })
        .unwrap_or_default()
}

fn bracket_label(x: &str, y: &str) -> String {
    format!("[{x}, {y}]")
}

fn infix(op: &'static str) -> impl Fn(&str, &str) -> String {
    move |x, y| format!("{x} {op} {y}")
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn render(v: &Vector, basis: &SuperBasis) -> String {
    render_terms(v.render(basis).into_iter(), "")
}

fn render_terms(terms: impl Iterator<Item = (String, Scalar)>, suffix: &str) -> String {
    let parts: Vec<String> = terms.map(|(b, c)| format!("({c})·{b}{suffix}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn write_algebra(
    a: &SuperAlgebra,
    name: Option<String>,
    output: Option<&Path>,
    report: &mut Report,
) -> Result<(), CliError> {
    if let Some(path) = output {
        load::write_json(path, &spec::from_algebra(a, name))?;
        report.note(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn precondition(report: &mut Report, e: ConstructionError) -> Result<(), CliError> {
    match e {
        ConstructionError::PreconditionFailed { what, report: r } => {
            report.check(&format!("precondition: {what}"), &r);
            Ok(())
        }
        ConstructionError::Algebra(e) => Err(e.into()),
    }
}

fn certified_gd(
    report: &mut Report,
    result: Result<Certified<GDStructure>, ConstructionError>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    match result {
        Ok(c) => {
            let a = &c.value.algebra;
            report.table(
                format!("bracket `{}`", c.value.bracket),
                product_table(a, &c.value.bracket, bracket_label),
            );
            report.table(
                format!("product `{}`", c.value.circ),
                product_table(a, &c.value.circ, infix("∘")),
            );
            report.check("gd", &c.certificate);
            write_algebra(a, None, output, report)
        }
        Err(e) => precondition(report, e),
    }
}

fn star_sections(report: &mut Report, label: &str, c: &StarCandidate) {
    report.check(&format!("{label} criteria"), &c.conditions);
    report.check(&format!("{label} supplement"), &c.supplement);
    report.check(&format!("{label} gd"), &c.direct);
}

fn construct(
    doc: &Loaded,
    roles: &Roles,
    kind: Construction,
    shift: Option<&str>,
    map: Option<&str>,
    output: Option<&Path>,
) -> Result<Report, CliError> {
    let mut report = Report::new(format!("construct {}", value_name(kind)));
    let a = doc.superalgebra()?;
    let shift = scalar_arg(shift, &a.params, Scalar::zero())?;
    match kind {
        Construction::Supercommutator => {
            let alpha = map.unwrap_or(&roles.alpha);
            certified_gd(
                &mut report,
                supercommutator_gd(a, &roles.circ, alpha),
                output,
            )?;
        }
        Construction::YauTwist => {
            let alpha = map.unwrap_or(&roles.alpha);
            let names: Vec<&str> = a.products.keys().map(String::as_str).collect();
            match yau_twist(a, &names, alpha) {
                Ok(c) => {
                    for n in &names {
                        report.table(
                            format!("twisted `{n}`"),
                            product_table(&c.value, n, infix("·")),
                        );
                    }
                    report.check("certificate", &c.certificate);
                    write_algebra(&c.value, None, output, &mut report)?;
                }
                Err(e) => precondition(&mut report, e)?,
            }
        }
        Construction::Derivation => {
            let d = map.unwrap_or("D");
            let r = derivation_construction(a, &roles.mul, &roles.alpha, d, &shift);
            certified_gd(&mut report, r, output)?;
        }
        Construction::Poisson => {
            let d = map.unwrap_or("D");
            let r = poisson_construction(a, &roles.mul, &roles.bracket, &roles.alpha, d, &shift);
            certified_gd(&mut report, r, output)?;
        }
        Construction::Star => {
            let f = map.unwrap_or("f");
            match star_constructions(a, &roles.bracket, &roles.alpha, f) {
                Ok(out) => {
                    let mut algebra = out.star.structure.algebra.clone();
                    let prime = &out.star_prime.structure.algebra;
                    report.table(
                        "x ⋆ y = [f(x), y]",
                        product_table(&algebra, "star", infix("⋆")),
                    );
                    report.table(
                        "x ⋆′ y = [x, f(y)]",
                        product_table(prime, "star_prime", infix("⋆′")),
                    );
                    star_sections(&mut report, "star", &out.star);
                    star_sections(&mut report, "star_prime", &out.star_prime);
                    let consistent = out.star.consistent_with_supplement()
                        && out.star_prime.consistent_with_supplement();
                    for (label, c) in [("star", &out.star), ("star_prime", &out.star_prime)] {
                        let v = if c.direct.passed() { "is" } else { "is not" };
                        report.note(format!("`{label}` {v} a GD structure"));
                        if !c.consistent() {
                            report.note(format!(
                                "listed criteria for `{label}` disagree with the direct checks"
                            ));
                        }
                    }
                    report.note("the verdict records whether the criteria, with the supplement, agree with the direct checks");
                    report.verdict = Some(if consistent {
                        VerdictOut::Pass
                    } else {
                        VerdictOut::Fail
                    });
                    if let Some(t) = prime.products.get("star_prime") {
                        algebra.products.insert("star_prime".into(), t.clone());
                    }
                    write_algebra(&algebra, None, output, &mut report)?;
                }
                Err(e) => precondition(&mut report, e)?,
            }
        }
    }
    Ok(report)
}

fn parse_window(s: &str) -> Result<AffineMode, CliError> {
    let bad = || CliError::Usage(format!("window must look like `lo..hi`, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(AffineMode::Window(lo..=hi))
}

fn affinize(doc: &Loaded, roles: &Roles, mode: &AffineMode) -> Result<Report, CliError> {
    let mut report = Report::new(format!("affinize {mode}"));
    let g = match doc.gd(roles)? {
        Derived::Ok(g) => g,
        Derived::NotQuadratic(e) => {
            fail_with(&mut report, e.to_string());
            return Ok(report);
        }
    };
    let aff = Affinization::new(&g)?;
    let [m, n, _] = aff.index_names();
    let basis = aff.basis();
    let mut entries = Vec::new();
    for u in 0..basis.len() {
        for v in 0..basis.len() {
            let [top, lower] = aff.formal_bracket(u, v);
            if top.is_zero() && lower.is_zero() {
                continue;
            }
            let bump = if basis.parity(u).is_odd() && basis.parity(v).is_odd() {
                "+1"
            } else {
                ""
            };
            let top_index = format!("[{m}+{n}{bump}]");
            let lower_index = if bump.is_empty() {
                format!("[{m}+{n}-1]")
            } else {
                format!("[{m}+{n}]")
            };
            let terms = top
                .render(basis)
                .into_iter()
                .map(|(b, c)| (format!("{b}{top_index}"), c))
                .chain(
                    lower
                        .render(basis)
                        .into_iter()
                        .map(|(b, c)| (format!("{b}{lower_index}"), c)),
                );
            entries.push((
                format!("[{}[{m}], {}[{n}]]", basis.name(u), basis.name(v)),
                render_terms(terms, ""),
            ));
        }
    }
    report.table("loop brackets", entries);
    report.check("loop-hom-lie", &aff.check(mode));
    Ok(report)
}

fn conformalize(doc: &Loaded, roles: &Roles, output: Option<&Path>) -> Result<Report, CliError> {
    let mut report = Report::new("conformalize");
    let g = match doc.gd(roles)? {
        Derived::Ok(g) => g,
        Derived::NotQuadratic(e) => {
            fail_with(&mut report, e.to_string());
            return Ok(report);
        }
    };
    let r = quadratic_from_gd(&g).map_err(validation)?;
    report.table("λ-brackets", lambda_table(&r));
    report.check("conformal-skew-symmetry", &r.check_skew());
    report.check("conformal-hom-jacobi", &r.check_jacobi());
    if let Some(path) = output {
        load::write_json(path, &spec::from_conformal(&r, doc.spec.name.clone()))?;
        report.note(format!("wrote {}", path.display()));
    }
    Ok(report)
}

fn lambda_table(r: &ConformalAlgebra) -> Vec<(String, String)> {
    let b = &r.generators;
    r.bracket_entries()
        .map(|((i, j), v)| {
            (
                format!("[{}_λ {}]", b.name(i), b.name(j)),
                v.display(b).to_string(),
            )
        })
        .collect()
}

fn gd_extract(doc: &Loaded, roles: &Roles, output: Option<&Path>) -> Result<Report, CliError> {
    let mut report = Report::new("gd-extract");
    let r = doc.conformal(roles)?;
    let g = match gd_from_quadratic(&r) {
        Ok(g) => g,
        Err(e @ ConformalError::NotQuadratic { .. }) => {
            fail_with(&mut report, e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(validation(e)),
    };
    let a = &g.algebra;
    report.table("bracket", product_table(a, &g.bracket, bracket_label));
    report.table("∘", product_table(a, &g.circ, infix("∘")));
    report.check("gd", &g.check()?);
    write_algebra(a, doc.spec.name.clone(), output, &mut report)?;
    Ok(report)
}

fn solve_alpha_cmd(doc: &Loaded, roles: &Roles, degree: Option<u32>) -> Result<Report, CliError> {
    let mut report = Report::new("solve-alpha");
    let r = doc.conformal(roles)?;
    let space = match solve_alpha(&r, degree) {
        Ok(s) => s,
        Err(ConformalError::PreconditionFailed { what, report: pre }) => {
            report.check(&format!("precondition: {what}"), &pre);
            return Ok(report);
        }
        Err(e) => return Err(validation(e)),
    };
    let b = &r.generators;
    let rendered = space
        .basis_tables()
        .iter()
        .enumerate()
        .map(|(k, t)| Table {
            name: format!("α_{}", k + 1),
            entries: (0..r.dim())
                .map(|i| {
                    let v = t.get(&i).cloned().unwrap_or_default();
                    let shown = v.display(b).to_string();
                    (format!("α({})", b.name(i)), shown)
                })
                .collect(),
        })
        .collect();
    report.note(format!("degree bound {}", space.degree_bound));
    report.solutions = Some(Solutions {
        dimension: space.dimension(),
        unknowns: space.slots.iter().map(|s| space.slot_name(&r, s)).collect(),
        basis: space
            .space
            .kernel
            .iter()
            .map(|v| v.iter().map(Scalar::to_string).collect())
            .collect(),
        rendered,
    });
    Ok(report)
}

fn cocycle_table(f: &Cocycle, basis: &SuperBasis) -> Vec<(String, String)> {
    f.render(basis)
        .into_iter()
        .map(|(k, p)| (k, p.to_string()))
        .collect()
}

fn cocycles(
    doc: &Loaded,
    roles: &Roles,
    max_degree: usize,
    output: Option<&Path>,
) -> Result<Report, CliError> {
    let mut report = Report::new(format!("cocycles up to degree {max_degree}"));
    let r = doc.conformal(roles)?;
    let space = solve_cocycle_space(&r, max_degree);
    let basis = space.basis();
    if let Some(dir) = output {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        for (k, f) in basis.iter().enumerate() {
            let path = dir.join(format!("cocycle-{}.json", k + 1));
            load::write_json(&path, &CocycleSpec::from_cocycle(f, &r.generators))?;
        }
        report.note(format!(
            "wrote {} cocycle documents to {}",
            basis.len(),
            dir.display()
        ));
    }
    report.solutions = Some(Solutions {
        dimension: space.dimension(),
        unknowns: space.space.unknowns.clone(),
        basis: space
            .space
            .kernel
            .iter()
            .map(|v| v.iter().map(Scalar::to_string).collect())
            .collect(),
        rendered: basis
            .iter()
            .enumerate()
            .map(|(k, f)| Table {
                name: format!("f_{}", k + 1),
                entries: cocycle_table(f, &r.generators),
            })
            .collect(),
    });
    Ok(report)
}

fn read_cocycle(path: &Path, basis: &SuperBasis, params: &[String]) -> Result<Cocycle, CliError> {
    spec::parse_cocycle(&load::read(path)?)?.cocycle(basis, params)
}

fn cext_failure(report: &mut Report, e: CextError) -> Result<(), CliError> {
    match e {
        CextError::NotACocycle(r) => report.check("cocycle", &r),
        CextError::HypothesisFailed(r) => report.check("hypothesis: Hom-Lie conformal", &r),
        e => return Err(validation(e)),
    }
    Ok(())
}

fn extend_cmd(
    doc: &Loaded,
    roles: &Roles,
    cocycle: &Path,
    alpha_center: Option<&str>,
    output: Option<&Path>,
) -> Result<Report, CliError> {
    let mut report = Report::new("extend");
    let r = doc.conformal(roles)?;
    let f = read_cocycle(cocycle, &r.generators, &r.params)?;
    let opts = ExtendOptions {
        alpha_center: scalar_arg(alpha_center, &r.params, Scalar::one())?,
        ..ExtendOptions::default()
    };
    match extend(&r, &f, &opts) {
        Ok(ext) => {
            report.table("λ-brackets", lambda_table(&ext.algebra));
            report.check("extension hom-lie conformal", &ext.certificate);
            if let Some(path) = output {
                load::write_json(
                    path,
                    &spec::from_conformal(&ext.algebra, doc.spec.name.clone()),
                )?;
                report.note(format!("wrote {}", path.display()));
            }
        }
        Err(e) => cext_failure(&mut report, e)?,
    }
    Ok(report)
}

fn verify_thm51(doc: &Loaded, roles: &Roles, cocycle: &Path) -> Result<Report, CliError> {
    let mut report = Report::new("verify-thm51");
    let g = match doc.gd(roles)? {
        Derived::Ok(g) => g,
        Derived::NotQuadratic(e) => {
            fail_with(&mut report, e.to_string());
            return Ok(report);
        }
    };
    let f = read_cocycle(cocycle, &g.algebra.basis, &g.algebra.params)?;
    report.table("cocycle", cocycle_table(&f, &g.algebra.basis));
    match verify_theorem51(&g, &f) {
        Ok(r) => report.check("relations", &r),
        Err(e) => cext_failure(&mut report, e)?,
    }
    Ok(report)
}

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
    mismatches: Vec<String>,
}

impl Tally {
    fn record(&mut self, k: usize, agree: bool, passed: bool, what: impl FnOnce() -> String) {
        if passed {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
        if !agree {
            self.mismatches.push(format!("instance {k}: {}", what()));
        }
    }

    fn finish(self, report: &mut Report, seed: u64, count: usize) {
        report.table(
            "instances",
            vec![
                ("seed".into(), seed.to_string()),
                ("count".into(), count.to_string()),
                ("passing".into(), self.pass.to_string()),
                ("failing".into(), self.fail.to_string()),
                ("disagreements".into(), self.mismatches.len().to_string()),
            ],
        );
        let ok = self.mismatches.is_empty();
        for m in self.mismatches {
            report.note(m);
        }
        report.verdict = Some(if ok {
            VerdictOut::Pass
        } else {
            VerdictOut::Fail
        });
    }
}

fn property(suite: Suite, count: usize, seed: u64) -> Report {
    let mut report = Report::new(format!("property {}", value_name(suite)));
    let mut gen = Generator::new(seed);
    let mut tally = Tally::default();
    for k in 0..count {
        match suite {
            Suite::GdIff => {
                let n = gen.dim_between(2, 3);
                let g = gen.gd_candidate(n);
                let gd = g.check().expect("generated roles exist");
                let r = quadratic_from_gd(&g).expect("generated tables are quadratic");
                let conf = r.check_axioms();
                tally.record(k, gd.passed() == conf.passed(), gd.passed(), || {
                    format!("gd {gd} conformal {conf}")
                });
            }
            Suite::AffineIff => {
                let n = gen.dim_between(2, 3);
                let g = gen.gd_candidate(n);
                let gd = g.check().expect("generated roles exist");
                let delta = Affinization::new(&g)
                    .expect("generated roles exist")
                    .check(&AffineMode::Delta);
                tally.record(k, gd.passed() == delta.passed(), gd.passed(), || {
                    format!("gd {gd} delta {delta}")
                });
            }
            Suite::Star => {
                let g = gen.graded_lie();
                let f = match k % 3 {
                    0 => EvenMap::zero(),
                    1 => gen.shifted_derivation(&g, &[("bracket", false)]).0,
                    _ => gen.weight_preserving_map(&g),
                };
                let l = g.algebra.clone().with_map("f", f);
                let out = star_constructions(&l, "bracket", "alpha", "f")
                    .expect("generated brackets are Hom-Lie");
                for c in [&out.star, &out.star_prime] {
                    tally.record(k, c.consistent_with_supplement(), c.direct.passed(), || {
                        format!(
                            "criteria {} supplement {} direct {}",
                            c.conditions, c.supplement, c.direct
                        )
                    });
                }
            }
            Suite::Thm51 => {
                let n = gen.dim_between(2, 3);
                let g = gen.gd_structure(n);
                let r = quadratic_from_gd(&g).expect("generated tables are quadratic");
                for f in solve_cocycle_space(&r, 3).basis() {
                    let rel = theorem51_relations(&g, &f).expect("solved cocycles match the basis");
                    tally.record(k, rel.passed(), rel.passed(), || rel.to_string());
                }
            }
        }
    }
    tally.finish(&mut report, seed, count);
    report
}
