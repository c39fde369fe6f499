//! Command-line front end: datum validation, tables of simple modules
//! and antipode traces, verification sweeps, and self-check suites.
//!
//! Exit codes: 0 on success, 1 on datum validation failure, 2 on any
//! internal disagreement between independent computation routes.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qplane::abelian::orthogonal_count;
use qplane::classify;
use qplane::cyclotomic::{q_integer, CycNumber};
use qplane::datum::{drinfeld_taft_datum, uqsl2_datum, Datum, DatumSpec};
use qplane::error::Error;
use qplane::hopf::{
    commute_yx, commute_yx_iterative, projective_witness, AlgebraElement,
};
use qplane::modules::{
    dual_module, exponent, is_self_dual, simple, verma, ModuleRep,
};
use qplane::trace::{
    form_matrix_closed, form_matrix_semantic, trace_bruteforce, trace_closed, trace_special_sl2,
};

#[derive(Parser)]
#[command(
    name = "qplane",
    about = "Exact simple modules and antipode traces for nilpotent liftings of quantum planes",
    long_about = "Exact simple modules and antipode traces for nilpotent liftings of \
quantum planes.\n\nDatum JSON schema: {\"group\":[d1,...,dk],\"a\":[e1,...,ek],\
\"b\":[...],\"chi\":[...]}\nwhere group lists cyclic factors (normalized to \
invariant-factor form on load),\nelements are exponent tuples on the factor \
generators, and chi is an exponent\ntuple with chi(g_i) = zeta_{d_i}^{chi_i} for \
the distinguished primitive root\nzeta_{d_i} of each factor. Cyclotomic values \
print as c0 + c1*z + ... with\nz = zeta_E, E the group exponent.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct DatumSource {
    /// Inline datum JSON.
    #[arg(long, value_name = "JSON", conflicts_with_all = ["datum", "uqsl2", "drinfeld_taft"])]
    datum_json: Option<String>,
    /// Path to a datum JSON file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["uqsl2", "drinfeld_taft"])]
    datum: Option<String>,
    /// Builder shortcut: the u_q(sl2) datum at odd order n.
    #[arg(long, value_name = "N", conflicts_with = "drinfeld_taft")]
    uqsl2: Option<u64>,
    /// Builder shortcut: the Drinfeld double of the Taft algebra at odd order n.
    #[arg(long, value_name = "N")]
    drinfeld_taft: Option<u64>,
}

impl DatumSource {
    fn load(&self) -> Result<Datum, Error> {
        if let Some(json) = &self.datum_json {
            return DatumSpec::from_json(json)?.build();
        }
        if let Some(path) = &self.datum {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            return DatumSpec::from_json(&text)?.build();
        }
        if let Some(n) = self.uqsl2 {
            return uqsl2_datum(n);
        }
        if let Some(n) = self.drinfeld_taft {
            return drinfeld_taft_datum(n);
        }
        Err(Error::Parse(
            "no datum given: use --datum-json, --datum, --uqsl2 or --drinfeld-taft".into(),
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a datum and echo its derived constants.
    Validate {
        #[command(flatten)]
        source: DatumSource,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// One row per weight: exponents, e, dim, self-duality.
    Simples {
        #[command(flatten)]
        source: DatumSource,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Antipode traces of the self-dual simple modules by three routes.
    Trace {
        #[command(flatten)]
        source: DatumSource,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Run every check over all valid data on groups of order <= cap.
    Sweep {
        #[arg(long, default_value_t = 8)]
        cap: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Run the internal cross-check suites and report pass/fail.
    Selfcheck {
        /// Group-order cap for the sweep-based suites.
        #[arg(long, default_value_t = 8)]
        cap: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads(threads: usize) {
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { source, format } => cmd_validate(&source, format),
        Command::Simples { source, format } => cmd_simples(&source.load()?, format),
        Command::Trace { source, format } => cmd_trace(&source.load()?, format),
        Command::Sweep {
            cap,
            threads,
            format,
        } => {
            configure_threads(threads);
            cmd_sweep(cap, format)
        }
        Command::Selfcheck { cap, threads } => {
            configure_threads(threads);
            Ok(cmd_selfcheck(cap))
        }
    }
}

/// Render a trace value: canonical cyclotomic string, plus the plain
/// rational when the value is rational.
fn rational_column(v: &CycNumber) -> String {
    match v.as_rational() {
        Some(r) => {
            if r.denom() == &num_bigint::BigInt::from(1) {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        None => "-".to_string(),
    }
}

fn exps_string(exps: &[u64]) -> String {
    format!(
        "[{}]",
        exps.iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn cmd_validate(source: &DatumSource, format: Format) -> Result<ExitCode, Error> {
    match source.load() {
        Ok(datum) => {
            match format {
                Format::Tsv => {
                    println!("datum\t{}", datum.serial());
                    println!("n\t{}", datum.n());
                    println!("q\t{}", datum.q());
                    println!("condition_1\tok");
                    println!("condition_2\tok");
                    println!("condition_3\tok");
                }
                Format::Json => {
                    let out = json!({
                        "datum": datum.to_spec(),
                        "n": datum.n(),
                        "q": datum.q().to_string(),
                        "conditions": {"1": "ok", "2": "ok", "3": "ok"},
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(err @ (Error::ConditionOneViolated(_)
        | Error::ConditionTwoViolated
        | Error::ConditionThreeViolated)) => {
            println!("invalid\t{err}");
            Ok(ExitCode::from(1))
        }
        Err(other) => Err(other),
    }
}

fn cmd_simples(datum: &Datum, format: Format) -> Result<ExitCode, Error> {
    let mut rows = Vec::new();
    for lambda in datum.group().characters() {
        let e = exponent(datum, &lambda)?;
        let module = simple(datum, &lambda)?;
        rows.push((
            exps_string(lambda.exps()),
            e,
            module.dim(),
            is_self_dual(datum, &lambda)?,
        ));
    }
    match format {
        Format::Tsv => {
            println!("lambda\te\tdim\tself_dual");
            for (l, e, dim, sd) in rows {
                println!("{l}\t{e}\t{dim}\t{sd}");
            }
        }
        Format::Json => {
            let out: Vec<_> = rows
                .iter()
                .map(|(l, e, dim, sd)| {
                    json!({"lambda": l, "e": e, "dim": dim, "self_dual": sd})
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_trace(datum: &Datum, format: Format) -> Result<ExitCode, Error> {
    let mut rows = Vec::new();
    let mut all_agree = true;
    for lambda in datum.group().characters() {
        if !is_self_dual(datum, &lambda)? {
            continue;
        }
        let e = exponent(datum, &lambda)?;
        let closed = trace_closed(datum, &lambda)?;
        let via_closed = trace_bruteforce(&form_matrix_closed(datum, &lambda)?)?;
        let via_semantic = trace_bruteforce(&form_matrix_semantic(datum, &lambda)?)?;
        let agree = closed == via_closed && closed == via_semantic;
        all_agree &= agree;
        rows.push((exps_string(lambda.exps()), e, closed, via_closed, via_semantic, agree));
    }
    match format {
        Format::Tsv => {
            println!("lambda\te\ttrace\ttrace_rational\troute_closed_form\troute_semantic_form\tagree");
            for (l, e, closed, via_closed, via_semantic, agree) in &rows {
                println!(
                    "{l}\t{e}\t{closed}\t{}\t{via_closed}\t{via_semantic}\t{agree}",
                    rational_column(closed)
                );
            }
        }
        Format::Json => {
            let out: Vec<_> = rows
                .iter()
                .map(|(l, e, closed, via_closed, via_semantic, agree)| {
                    json!({
                        "lambda": l,
                        "e": e,
                        "trace": closed.to_string(),
                        "trace_rational": rational_column(closed),
                        "route_closed_form": via_closed.to_string(),
                        "route_semantic_form": via_semantic.to_string(),
                        "agree": agree,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    if all_agree {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: trace routes disagree");
        Ok(ExitCode::from(2))
    }
}

fn cmd_sweep(cap: u64, format: Format) -> Result<ExitCode, Error> {
    let records = classify::sweep(cap);
    let mut all_pass = true;
    match format {
        Format::Tsv => {
            println!(
                "datum\tn\t|ab|\te\tcount\tself_dual\tclause1\tclause2\tclause3\t\
                 traces\tzero_iff_projective\twitness\tmodules\tcommutation\tunique_self_dual"
            );
            for r in &records {
                all_pass &= r.all_pass();
                let opt = |o: Option<bool>| match o {
                    Some(true) => "pass",
                    Some(false) => "FAIL",
                    None => "n/a",
                };
                let flag = |b: bool| if b { "pass" } else { "FAIL" };
                for row in &r.rows {
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        r.serial,
                        r.n,
                        r.ab_order,
                        row.e,
                        row.count,
                        row.self_dual_count,
                        flag(r.report.clause1),
                        flag(r.report.clause2),
                        opt(r.report.clause3),
                        flag(r.traces_three_way),
                        flag(r.zero_iff_top_exponent),
                        flag(r.witness_nonzero),
                        flag(r.modules_wellformed),
                        opt(r.commutation_agrees),
                        opt(r.unique_self_dual_per_class),
                    );
                }
            }
        }
        Format::Json => {
            for r in &records {
                all_pass &= r.all_pass();
            }
            println!("{}", serde_json::to_string_pretty(&records).unwrap());
        }
    }
    eprintln!(
        "sweep: {} data over groups of order <= {cap}, {}",
        records.len(),
        if all_pass { "all checks pass" } else { "CHECK FAILURES" }
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_selfcheck(cap: u64) -> ExitCode {
    let mut all = true;
    let mut report = |name: &str, pass: bool| {
        println!("{name}\t{}", if pass { "pass" } else { "FAIL" });
        all &= pass;
    };

    report("cyclotomic_field_axioms", suite_cyclotomic());
    report("q_combinatorics", suite_q_combinatorics());
    report("hopf_axioms", suite_hopf());
    report("commutation_closed_vs_iterative", suite_commutation());
    report("module_relations", suite_modules());
    report("dual_certificates", suite_duals());
    report("trace_three_way", suite_traces());
    report("special_case_traces", suite_special_cases());
    report("classification_sweep", classify::sweep(cap).iter().all(|r| r.all_pass()));

    if all {
        println!("selfcheck\tpass");
        ExitCode::SUCCESS
    } else {
        println!("selfcheck\tFAIL");
        ExitCode::from(2)
    }
}

fn selfcheck_data() -> Vec<Datum> {
    let mut data = vec![
        uqsl2_datum(3).unwrap(),
        uqsl2_datum(5).unwrap(),
        drinfeld_taft_datum(3).unwrap(),
    ];
    data.extend(classify::enumerate_data(4));
    data
}

fn suite_cyclotomic() -> bool {
    for order in [3u64, 4, 5, 6, 8, 12] {
        let z = CycNumber::root_of_unity(order, 1);
        if !z.pow(order as i64).is_one() {
            return false;
        }
        let u = &z + &CycNumber::from_integer(2);
        let Ok(inv) = u.inv() else { return false };
        if !(&u * &inv).is_one() {
            return false;
        }
        let lifted = u.lift_to(order * 3);
        if lifted != u || lifted.to_order(order) != Ok(u.clone()) {
            return false;
        }
    }
    true
}

fn suite_q_combinatorics() -> bool {
    for order in [3u64, 5, 7] {
        let q = CycNumber::root_of_unity(order, 1);
        for m in 1..=order {
            let lhs = q_integer(m, &q);
            let rhs = qplane::cyclotomic::q_binomial(m, 1, &q).expect("m >= 1");
            if lhs != rhs {
                return false;
            }
            if (m % order == 0) != lhs.is_zero() {
                return false;
            }
        }
    }
    true
}

fn suite_hopf() -> bool {
    for datum in selfcheck_data() {
        let x = AlgebraElement::x(&datum);
        let y = AlgebraElement::y(&datum);
        // Defining relation and nilpotency.
        let xy = x.normal_product(&y).expect("same datum");
        let yx = y.normal_product(&x).expect("same datum");
        let ab = AlgebraElement::group_element(&datum, &datum.ab()).expect("same group");
        let rel = xy.sub(&yx.scale(datum.q()));
        if rel != ab.sub(&AlgebraElement::one(&datum)) {
            return false;
        }
        if !x.pow(datum.n()).expect("same datum").is_zero() {
            return false;
        }
        // Antipode axiom on the generators and a mixed monomial.
        for u in [
            x.clone(),
            y.clone(),
            ab.clone(),
            x.normal_product(&ab).expect("same datum"),
        ] {
            if !u.antipode_axiom_check() {
                return false;
            }
        }
        // S^2(x) = q x.
        if x.antipode().antipode() != x.scale(datum.q()) {
            return false;
        }
    }
    true
}

fn suite_commutation() -> bool {
    for datum in selfcheck_data() {
        for j in 0..datum.n() {
            for k in 0..datum.n() {
                let closed = commute_yx(&datum, j, k).expect("powers below n");
                let iter = commute_yx_iterative(&datum, j, k).expect("powers below n");
                if closed != iter {
                    return false;
                }
            }
        }
    }
    true
}

fn suite_modules() -> bool {
    for datum in selfcheck_data() {
        for lambda in datum.group().characters() {
            let Ok(z) = verma(&datum, &lambda) else { return false };
            let Ok(l) = simple(&datum, &lambda) else { return false };
            if z.verify_relations().is_err() || l.verify_relations().is_err() {
                return false;
            }
            let Ok(e) = exponent(&datum, &lambda) else { return false };
            if l.dim() != e + 1 {
                return false;
            }
        }
    }
    true
}

fn suite_duals() -> bool {
    for datum in selfcheck_data() {
        for lambda in datum.group().characters() {
            let Ok(l) = simple(&datum, &lambda) else { return false };
            let Ok(cert) = dual_module(&l) else { return false };
            if !cert.verify() {
                return false;
            }
            let self_dual = is_self_dual(&datum, &lambda).unwrap_or(false);
            if self_dual != (cert.target.weight() == &lambda) {
                return false;
            }
        }
    }
    true
}

fn suite_traces() -> bool {
    for datum in selfcheck_data() {
        for lambda in datum.group().characters() {
            if !is_self_dual(&datum, &lambda).unwrap_or(false) {
                continue;
            }
            let Ok(closed) = trace_closed(&datum, &lambda) else { return false };
            let via_closed = form_matrix_closed(&datum, &lambda)
                .and_then(|a| trace_bruteforce(&a));
            let via_semantic = form_matrix_semantic(&datum, &lambda)
                .and_then(|a| trace_bruteforce(&a));
            if via_closed != Ok(closed.clone()) || via_semantic != Ok(closed.clone()) {
                return false;
            }
            let Ok(e) = exponent(&datum, &lambda) else { return false };
            if closed.is_zero() != (e == datum.n() as usize - 1) {
                return false;
            }
            if e == datum.n() as usize - 1 {
                match projective_witness(&datum, &lambda) {
                    Ok((_, c)) if !c.is_zero() => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

fn suite_special_cases() -> bool {
    for n in [3u64, 5, 7] {
        let datum = uqsl2_datum(n).expect("odd order");
        let r = CycNumber::root_of_unity(n, 1);
        for lambda in datum.group().characters() {
            if !is_self_dual(&datum, &lambda).unwrap_or(false) {
                continue;
            }
            let e = exponent(&datum, &lambda).expect("valid weight") as u64;
            let closed = trace_closed(&datum, &lambda).expect("self-dual");
            let special = trace_special_sl2(e, &r).expect("odd order");
            if closed != special {
                return false;
            }
        }
    }
    for n in [3u64, 5] {
        let datum = drinfeld_taft_datum(n).expect("odd order");
        let r = CycNumber::root_of_unity(n, 1);
        for lambda in datum.group().characters() {
            if !is_self_dual(&datum, &lambda).unwrap_or(false) {
                continue;
            }
            let e = exponent(&datum, &lambda).expect("valid weight") as u64;
            let closed = trace_closed(&datum, &lambda).expect("self-dual");
            let special = trace_special_sl2(e, &r).expect("odd order");
            if closed != special {
                return false;
            }
        }
    }
    // Guard: the sweep-facing counting identity |G| = |ab_perp| * |ab|.
    let d = uqsl2_datum(3).expect("odd order");
    orthogonal_count(&d.ab()) * d.ab().order() == d.group().order()
}
