use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stabgraph::io::{
    read_coincidence, record_from_json, record_to_json, to_dot, to_matrix_text, write_xi_text, xi_to_json,
};
use stabgraph::oracle::OracleError;
use stabgraph::pipeline::RECORD_SCHEMA;
use stabgraph::{
    catalog, detect_strong, detect_weak, run_pipeline, verify_correction, AgreementReport, CoincidenceMatrix,
    DetectionReport, ErrorConfiguration, Gate, PipelineOptions, StabilizerCode,
};

use crate::error::CliError;
use crate::{ConvertArgs, CrosscheckArgs, ExportArgs, Format, FuzzArgs, PipelineArgs, Verdict, VerifyArgs};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// A file path, or a catalog name when no such file exists.
fn load_code(arg: &str) -> Result<StabilizerCode, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(code) = catalog::by_name(arg) {
            return Ok(code);
        }
    }
    StabilizerCode::parse(&read(path)?).map_err(|source| CliError::Code {
        path: arg.to_string(),
        source,
    })
}

fn load_coincidence(path: &Path) -> Result<CoincidenceMatrix, CliError> {
    read_coincidence(&read(path)?).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn options(args: &PipelineArgs, cross_check: bool) -> PipelineOptions {
    PipelineOptions {
        e: args.e,
        mode: args.mode.into(),
        lc_bound: args.lc_bound,
        oracle_cap: args.oracle_cap,
        cross_check,
    }
}

fn detection_table(report: &DetectionReport) -> String {
    let mut out = format!("{:<16} {:<7} {:<7}\n", "E", "strong", "weak");
    for v in &report.per_config {
        let _ = writeln!(
            out,
            "{:<16} {:<7} {:<7}",
            v.config.to_string(),
            yes_no(v.strong),
            yes_no(v.weak)
        );
    }
    let _ = writeln!(
        out,
        "detectable ({}): {}/{}",
        report.mode,
        report.detectable_count(),
        report.per_config.len()
    );
    match report.first_failure() {
        None => {
            let _ = writeln!(out, "corrects e={}", report.e);
        }
        Some(first) => {
            let best = report.corrects_e.map_or("none".to_string(), |e| e.to_string());
            let _ = writeln!(
                out,
                "does not correct e={}: first undetectable E = {}; corrects e={best}",
                report.e, first.config
            );
        }
    }
    out
}

fn agreement_table(report: &AgreementReport) -> String {
    let mut out = format!("{:<16} {:<7} {:<7}\n", "E", "graph", "oracle");
    for a in &report.entries {
        let _ = writeln!(
            out,
            "{:<16} {:<7} {:<7}",
            a.config.to_string(),
            yes_no(a.graph),
            yes_no(a.oracle)
        );
    }
    let _ = writeln!(
        out,
        "disagreements ({}): {}/{}",
        report.mode,
        report.disagreements().len(),
        report.entries.len()
    );
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn convert(args: &ConvertArgs) -> Result<Verdict, CliError> {
    let code = load_code(&args.code)?;
    let rec = run_pipeline(&code, &options(&args.pipeline, !args.no_crosscheck))?;
    let xi = rec.coincidence().map_err(stabgraph::PipelineError::from)?;

    fs::create_dir_all(&args.out_dir).map_err(|source| CliError::Write {
        path: args.out_dir.clone(),
        source,
    })?;
    write(
        &args.out_dir.join("gamma.txt"),
        &format!("{}\n", rec.gamma.adjacency()),
    )?;
    write(&args.out_dir.join("xi.txt"), &write_xi_text(&xi))?;
    write(&args.out_dir.join("record.json"), &(record_to_json(&rec) + "\n"))?;
    write(&args.out_dir.join("graph.dot"), &to_dot(&xi))?;

    let seq: Vec<usize> = rec.lc_sequence.iter().map(|v| v + 1).collect();
    println!("[[{}, {}]] code", code.n(), code.k());
    println!(
        "hadamards on {:?}, LC sequence {seq:?}, conforming: {}",
        rec.standardization
            .hadamard_set
            .iter()
            .map(|q| q + 1)
            .collect::<Vec<_>>(),
        rec.conforming
    );
    let report = &rec.attachment;
    println!(
        "attachment conditions i/ii/iii: {}/{}/{}",
        report.cond_i, report.cond_ii, report.cond_iii
    );
    println!(
        "detectable ({}): {}/{}",
        rec.detection.mode,
        rec.detection.detectable_count(),
        rec.detection.per_config.len()
    );
    if let Some(a) = &rec.agreement {
        println!(
            "oracle disagreements: {}/{}",
            a.disagreements().len(),
            a.entries.len()
        );
    }
    println!(
        "wrote gamma.txt, xi.txt, record.json, graph.dot to {}",
        args.out_dir.display()
    );

    let agrees = rec.agreement.as_ref().map_or(true, AgreementReport::agrees);
    Ok(if rec.detection.corrects() && agrees {
        Verdict::Ok
    } else {
        Verdict::Failed
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Verdict, CliError> {
    let xi = load_coincidence(&args.input)?;
    let report = verify_correction(&xi, args.e, args.mode.into());
    let json = serde_json::to_string_pretty(&report).expect("serializable");
    match args.json.as_deref() {
        Some(p) if p == Path::new("-") => println!("{json}"),
        Some(p) => {
            write(p, &json)?;
            print!("{}", detection_table(&report));
        }
        None => print!("{}", detection_table(&report)),
    }
    Ok(if report.corrects() {
        Verdict::Ok
    } else {
        Verdict::Failed
    })
}

pub fn crosscheck(args: &CrosscheckArgs) -> Result<Verdict, CliError> {
    let code = load_code(&args.code)?;
    let cap = args.pipeline.oracle_cap;
    if code.n() > cap {
        return Err(OracleError::TooManyQubits { n: code.n(), cap }.into());
    }
    let rec = run_pipeline(&code, &options(&args.pipeline, true))?;
    let agreement = rec.agreement.expect("n is within the oracle cap");
    if let Some(path) = &args.json {
        write(
            path,
            &serde_json::to_string_pretty(&agreement).expect("serializable"),
        )?;
    }
    print!("{}", agreement_table(&agreement));
    Ok(if agreement.agrees() {
        Verdict::Ok
    } else {
        Verdict::Failed
    })
}

pub fn export(args: &ExportArgs) -> Result<Verdict, CliError> {
    let text = read(&args.input)?;
    let input_error = |source| CliError::Input {
        path: args.input.display().to_string(),
        source,
    };
    let xi = read_coincidence(&text).map_err(input_error)?;
    let out = match args.format {
        Format::Dot => to_dot(&xi),
        Format::Matrix => to_matrix_text(&xi),
        Format::Json if text.contains(RECORD_SCHEMA) => {
            let rec = record_from_json(&text).map_err(input_error)?;
            record_to_json(&rec) + "\n"
        }
        Format::Json => xi_to_json(&xi) + "\n",
    };
    match &args.output {
        Some(path) => write(path, &out)?,
        None => print!("{out}"),
    }
    Ok(Verdict::Ok)
}

fn random_clifford(rng: &mut StdRng, n: usize) -> Vec<Gate> {
    (0..6 * n)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let kinds = if n > 1 { 4 } else { 2 };
            match rng.gen_range(0..kinds) {
                0 => Gate::H(a),
                1 => Gate::P(a),
                kind => {
                    let b = (a + rng.gen_range(1..n)) % n;
                    if kind == 2 {
                        Gate::Cnot(a, b)
                    } else {
                        Gate::Cp(a, b)
                    }
                }
            }
        })
        .collect()
}

/// Random codes are canonical `[[n, k]]` codes conjugated by a random
/// Clifford circuit.
pub fn fuzz(args: &FuzzArgs) -> Result<Verdict, CliError> {
    let mut rng = StdRng::seed_from_u64(args.seed);
    let max_n = args.max_n.max(1);
    let opts = PipelineOptions::default();
    let mut failures = 0;
    for case in 0..args.cases {
        let n = rng.gen_range(1..=max_n);
        let k = rng.gen_range(0..n);
        let circuit = random_clifford(&mut rng, n);
        let code = StabilizerCode::canonical(n, k)
            .and_then(|c| c.conjugated(&circuit))
            .map_err(|source| CliError::Code {
                path: format!("fuzz case {case}"),
                source,
            })?;
        let mut problems = Vec::new();
        match run_pipeline(&code, &opts) {
            Err(e) => problems.push(e.to_string()),
            Ok(rec) => {
                let xi = rec.coincidence().map_err(stabgraph::PipelineError::from)?;
                for e in ErrorConfiguration::enumerate(n, n) {
                    if detect_strong(&xi, &e)? && !detect_weak(&xi, &e)? {
                        problems.push(format!("strong but not weak at {e}"));
                    }
                }
                if let Some(a) = rec.agreement.as_ref().filter(|a| !a.agrees()) {
                    problems.push(format!("{} oracle disagreements", a.disagreements().len()));
                }
            }
        }
        if !problems.is_empty() {
            failures += 1;
            println!("case {case} [[{n}, {k}]]: {}", problems.join("; "));
            print!("{}", code.to_text());
        }
    }
    println!("{} cases, {failures} failures (seed {})", args.cases, args.seed);
    Ok(if failures == 0 {
        Verdict::Ok
    } else {
        Verdict::Failed
    })
}
