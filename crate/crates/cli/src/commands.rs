use std::path::Path;

use qcorr_core::certify::{
    bounded_lhs_search, local_membership, superlocality_verdict, superunsteerability_verdict,
    ModelSearchReport, SearchConfig, SuperunsteerabilityVerdict, Verdict,
};
use qcorr_core::evaluate::{evaluate_metrics, is_applicable, Metric, Subject};
use qcorr_core::input::{parse_metrics, Family, InputDocument, RangeSpec, FAMILY_HELP};
use qcorr_core::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{g17, json_line};
use crate::{CertifyKind, Command, FamilyAction, Format, Output, Source};

/// A value counts as exceeding a classical bound only beyond this margin.
const EXCESS_TOL: f64 = 1e-9;

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Witness { source, metrics, output } => witness(&source, metrics.as_deref(), &output),
        Command::Sweep { family, range, threads, output } => {
            with_threads(threads, || sweep(&family, &range, &output))
        }
        Command::Certify { kind, source, dlambda, restarts, seed, threads, output } => {
            let cfg = SearchConfig { restarts, seed, ..SearchConfig::default() };
            with_threads(threads, || certify(kind, &source, dlambda, &cfg, &output))
        }
        Command::Family { action: FamilyAction::List } => {
            let text: String = FAMILY_HELP.iter().map(|(n, d)| format!("{n}\t{d}\n")).collect();
            emit(&text, None)
        }
    }
}

fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T>
where
    T: Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::ConfigError("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::ConfigError(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::ConfigError(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::ConfigError(format!("cannot write output: {e}")))
        }
    }
}

fn resolve(source: &Source) -> Result<Subject> {
    if let Some(f) = &source.family {
        return f.parse::<Family>()?.subject();
    }
    let path = source.input.as_ref().expect("clap requires one source");
    let bytes = std::fs::read(path)
        .map_err(|e| Error::ConfigError(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::from_slice(&bytes)?.resolve()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn witness(source: &Source, metrics: Option<&str>, output: &Output) -> Result<()> {
    let subject = resolve(source)?;
    let metrics = match metrics {
        Some(list) => parse_metrics(list)?,
        None => Metric::ALL.into_iter().filter(|&m| is_applicable(&subject, m)).collect(),
    };
    let values = evaluate_metrics(&subject, &metrics)?;
    let mut text = String::new();
    let format = output.format.unwrap_or(Format::Csv);
    if format == Format::Csv {
        text.push_str("metric,value,classical_bound,exceeds\n");
    }
    for (m, v) in metrics.iter().zip(&values) {
        let bound = m.classical_bound();
        let exceeds = bound.map(|b| *v > b + EXCESS_TOL);
        match format {
            Format::Csv => text.push_str(&format!(
                "{},{},{},{}\n",
                m.name(),
                g17(*v),
                bound.map(g17).unwrap_or_default(),
                exceeds.map(|e| e.to_string()).unwrap_or_default()
            )),
            Format::Jsonl => text.push_str(&json_line(json!({
                "command": "witness",
                "input": subject.label(),
                "metric": m.name(),
                "value": v,
                "classical_bound": bound,
                "exceeds": exceeds,
            }))),
        }
    }
    emit(&text, output.out.as_deref())
}

fn sweep(family: &str, range: &str, output: &Output) -> Result<()> {
    let family: Family = family.parse()?;
    if !family.is_parametric() {
        return Err(Error::ConfigError(format!("family `{}` has no parameter to sweep", family.name())));
    }
    if family.parameter().is_some() {
        return Err(Error::ConfigError("give the sweep family without a value, e.g. `werner`".into()));
    }
    let points = range.parse::<RangeSpec>()?.points();
    let rows: Vec<Vec<f64>> = points
        .par_iter()
        .map(|&v| evaluate_metrics(&family.with_parameter(v)?.subject()?, &Metric::ALL))
        .collect::<Result<_>>()?;
    let mut text = String::new();
    match output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            text.push_str("param");
            for m in Metric::ALL {
                text.push(',');
                text.push_str(m.name());
            }
            text.push('\n');
            for (p, row) in points.iter().zip(&rows) {
                text.push_str(&g17(*p));
                for v in row {
                    text.push(',');
                    text.push_str(&g17(*v));
                }
                text.push('\n');
            }
        }
        Format::Jsonl => {
            for (p, row) in points.iter().zip(&rows) {
                let mut obj = serde_json::Map::new();
                obj.insert("family".into(), json!(family.name()));
                obj.insert("param".into(), json!(p));
                for (m, v) in Metric::ALL.iter().zip(row) {
                    obj.insert(m.name().into(), json!(v));
                }
                text.push_str(&json_line(Value::Object(obj)));
            }
        }
    }
    emit(&text, output.out.as_deref())
}

/// One verdict record; `extra` fields follow the fixed ones.
struct Record {
    command: &'static str,
    input: String,
    verdict: String,
    residual: f64,
    dlambda: usize,
    restarts: usize,
    seed: u64,
    heuristic: bool,
    extra: Vec<(&'static str, Value)>,
}

impl Record {
    fn from_report(command: &'static str, input: &str, r: &ModelSearchReport) -> Self {
        Record {
            command,
            input: input.to_string(),
            verdict: r.verdict.name().to_string(),
            residual: r.residual,
            dlambda: r.dlambda,
            restarts: r.restarts,
            seed: r.seed,
            heuristic: r.heuristic,
            extra: vec![("iterations", json!(r.iterations)), ("model", to_value(&r.model))],
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => format!(
                "{},{},{},{},{},{},{},{}\n",
                self.command,
                csv_field(&self.input),
                self.verdict,
                g17(self.residual),
                self.dlambda,
                self.restarts,
                self.seed,
                self.heuristic
            ),
            Format::Jsonl => {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), json!(self.command));
                obj.insert("input".into(), json!(self.input));
                obj.insert("verdict".into(), json!(self.verdict));
                obj.insert("residual".into(), crate::format::json_f64(self.residual));
                obj.insert("dlambda".into(), json!(self.dlambda));
                obj.insert("restarts".into(), json!(self.restarts));
                obj.insert("seed".into(), json!(self.seed));
                obj.insert("heuristic".into(), json!(self.heuristic));
                for (k, v) in &self.extra {
                    obj.insert((*k).into(), v.clone());
                }
                json_line(Value::Object(obj))
            }
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn check_dlambda(d: usize) -> Result<usize> {
    if !(2..=4).contains(&d) {
        return Err(Error::ConfigError(format!("--dlambda must be 2, 3 or 4, got {d}")));
    }
    Ok(d)
}

fn certify(kind: CertifyKind, source: &Source, dlambda: Option<usize>, cfg: &SearchConfig, output: &Output) -> Result<()> {
    cfg.validate()?;
    let subject = resolve(source)?;
    let bx = subject.correlation_box()?;
    let label = subject.label().to_string();
    let bob = || {
        subject
            .bob()
            .ok_or_else(|| Error::ConfigError("steering tests need Bob's measurements (`bob` in the input)".into()))
    };
    let record = match kind {
        CertifyKind::Local => {
            if dlambda.is_some() {
                return Err(Error::ConfigError("`certify local` takes no --dlambda".into()));
            }
            let mut r = local_membership(&bx)?;
            r.seed = cfg.seed;
            Record::from_report("certify local", &label, &r)
        }
        CertifyKind::Superlocal => {
            let d = check_dlambda(dlambda.unwrap_or(2))?;
            let rep = superlocality_verdict(&bx, d, cfg)?;
            let main = rep.bounded.as_ref().unwrap_or(&rep.local);
            Record {
                command: "certify superlocal",
                input: label,
                verdict: rep.verdict.name().to_string(),
                residual: main.residual,
                dlambda: d,
                restarts: rep.bounded.as_ref().map_or(0, |b| b.restarts),
                seed: cfg.seed,
                heuristic: rep.heuristic,
                extra: vec![("local", to_value(&rep.local)), ("bounded", to_value(&rep.bounded))],
            }
        }
        CertifyKind::Unsteerable => {
            let d = check_dlambda(dlambda.unwrap_or(4))?;
            let bob = bob()?;
            if d == 4 {
                let r = bounded_lhs_search(&bx, &bob, 4, cfg)?;
                let implies = match r.verdict {
                    Verdict::ModelFound => "Unsteerable",
                    Verdict::NoModelFound => SuperunsteerabilityVerdict::Steerable.name(),
                    _ => "Inconclusive",
                };
                let mut rec = Record::from_report("certify unsteerable", &label, &r);
                rec.extra.insert(0, ("implies", json!(implies)));
                rec
            } else {
                let rep = superunsteerability_verdict(&bx, &bob, d, cfg)?;
                let mut rec = Record::from_report("certify unsteerable", &label, &rep.bounded);
                rec.extra.insert(0, ("implies", json!(rep.verdict.name())));
                rec.extra.push(("unbounded", to_value(&rep.unbounded)));
                rec
            }
        }
        CertifyKind::Superunsteerable => {
            let d = check_dlambda(dlambda.unwrap_or(2))?;
            let rep = superunsteerability_verdict(&bx, &bob()?, d, cfg)?;
            Record {
                command: "certify superunsteerable",
                input: label,
                verdict: rep.verdict.name().to_string(),
                residual: rep.bounded.residual,
                dlambda: d,
                restarts: rep.bounded.restarts,
                seed: cfg.seed,
                heuristic: rep.heuristic,
                extra: vec![("bounded", to_value(&rep.bounded)), ("unbounded", to_value(&rep.unbounded))],
            }
        }
    };
    let format = output.format.unwrap_or(Format::Jsonl);
    let mut text = String::new();
    if format == Format::Csv {
        text.push_str("command,input,verdict,residual,dlambda,restarts,seed,heuristic\n");
    }
    text.push_str(&record.render(format));
    emit(&text, output.out.as_deref())
}
