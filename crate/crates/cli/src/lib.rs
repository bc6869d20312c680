//! The `hdga` command line.
//!
//! [`run`] takes the argument list and explicit streams so it can be driven
//! in-process by tests. Exit status is 0 on success or PASS, 1 on FAIL and 2
//! on usage, parse or evaluation errors.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use hecke_dga::braid::{eval_braid, parse_braid, skein_residue, sphere_relation_class};
use hecke_dga::dga::DgaEltDoc;
use hecke_dga::homology::{
    d_matrix, d_squared_failures, generic_betti, graded_basis, h0_presentation,
    specialized_homology, DegreeWindow,
};
use hecke_dga::katok::{monotonicity_report, parse_rational, KatokParams};
use hecke_dga::{parse_expr, parse_poly, Dga, DgaConfig, DgaElt, Error};

#[derive(Parser, Debug)]
#[command(name = "hdga", version, about = "Exact computations in the dga H_k(c)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Number of strands.
    #[arg(long, global = true)]
    kappa: Option<usize>,
    /// Central parameter, a polynomial in h.
    #[arg(long, global = true, default_value = "1")]
    c: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Substitute this integer for h.
    #[arg(long, global = true, allow_negative_numbers = true)]
    hbar: Option<i64>,
    /// Work in degree -S.
    #[arg(long = "degree", short = 's', global = true)]
    degree: Option<usize>,
    /// Inclusive degree window A..B, e.g. -2..0.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// PBW normal form of an expression (or a JSON element).
    Nf { expr: Option<String> },
    /// Product of two expressions.
    Mul { a: String, b: String },
    /// Differential of an expression.
    Diff { expr: Option<String> },
    /// Check d^2 = 0 on every basis monomial up to x-degree MAXDEG.
    D2check {
        #[arg(long, default_value_t = 3)]
        maxdeg: usize,
    },
    /// Residues of all defining and derived relations.
    Relations,
    /// Betti numbers over Q(h).
    Betti,
    /// Homology over Z at h = --hbar (default 0).
    Homology,
    /// Degree-zero cohomology.
    H0,
    /// A graded slice of the PBW basis.
    Basis,
    /// Matrix of d from degree -S to -S+1.
    Matrix,
    /// Evaluate a braid word in the Hecke algebra.
    Braid { word: Option<String> },
    /// Check the skein relation for every generator and the sphere relation.
    Skein,
    /// Morse index monotonicity for the Katok examples.
    Katok {
        #[arg(long, default_value = "13/21")]
        lambda: String,
        #[arg(long, default_value = "1/1000")]
        epsilon: String,
        #[arg(long, default_value_t = 10)]
        n: u64,
        #[arg(long, default_value = "1/2")]
        tol: String,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<bool, Failure>;

struct Ctx<'a> {
    g: &'a Global,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn dga(&self) -> std::result::Result<Dga, Failure> {
        let k = self
            .g
            .kappa
            .ok_or_else(|| Failure::Usage("--kappa is required for this command".into()))?;
        let c = parse_poly(&self.g.c)?;
        Ok(Dga::new(DgaConfig::with_c(k, c)?))
    }

    fn input(&mut self, arg: &Option<String>) -> std::result::Result<String, Failure> {
        match arg {
            Some(s) => Ok(s.clone()),
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn json(&mut self, v: &impl Serialize) -> std::io::Result<()> {
        let s = serde_json::to_string_pretty(v).expect("serializable");
        writeln!(self.out, "{s}")
    }

    fn window(&self) -> std::result::Result<DegreeWindow, Failure> {
        match (&self.g.window, self.g.degree) {
            (Some(_), Some(_)) => Err(Failure::Usage("give --window or --degree, not both".into())),
            (Some(w), None) => Ok(w.parse()?),
            (None, Some(s)) => Ok(DegreeWindow::single(-(s as i64))?),
            (None, None) => Ok(DegreeWindow::single(0)?),
        }
    }

    fn hbar(&self) -> Option<BigInt> {
        self.g.hbar.map(BigInt::from)
    }

    fn element(&mut self, dga: &Dga, e: &DgaElt) -> std::io::Result<()> {
        let e = match self.hbar() {
            Some(q) => e.specialize(&q),
            None => e.clone(),
        };
        match self.g.format {
            Format::Text => writeln!(self.out, "{e}"),
            Format::Json => self.json(&DgaEltDoc::new(&e, dga.config())),
        }
    }
}

/// An expression, or a JSON element as printed by `--format json`.
fn read_element(dga: &Dga, text: &str) -> std::result::Result<DgaElt, Failure> {
    let text = text.trim();
    if !text.starts_with('{') {
        return Ok(parse_expr(text, dga.kappa())?.eval(dga)?);
    }
    let doc: DgaEltDoc =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad element JSON: {e}")))?;
    let (e, cfg) = doc.into_elt()?;
    if &cfg != dga.config() {
        return Err(Failure::Usage(format!(
            "element is for kappa {} and c = {}, not kappa {} and c = {}",
            cfg.kappa,
            cfg.c,
            dga.kappa(),
            dga.config().c
        )));
    }
    Ok(e)
}

fn pass_line(ok: bool, detail: &str) -> String {
    format!("{} ({detail})", if ok { "PASS" } else { "FAIL" })
}

fn dispatch(cmd: &Cmd, ctx: &mut Ctx) -> Outcome {
    let fmt = ctx.g.format;
    match cmd {
        Cmd::Nf { expr } | Cmd::Diff { expr } => {
            let dga = ctx.dga()?;
            let text = ctx.input(expr)?;
            let mut e = read_element(&dga, &text)?;
            if matches!(cmd, Cmd::Diff { .. }) {
                e = dga.differential(&e);
            }
            ctx.element(&dga, &e)?;
            Ok(true)
        }
        Cmd::Mul { a, b } => {
            let dga = ctx.dga()?;
            let a = read_element(&dga, a)?;
            let b = read_element(&dga, b)?;
            ctx.element(&dga, &dga.mul(&a, &b)?)?;
            Ok(true)
        }
        Cmd::D2check { maxdeg } => {
            let dga = ctx.dga()?;
            let mut checked = 0usize;
            let mut failures = Vec::new();
            for s in 0..=*maxdeg {
                checked += graded_basis(dga.kappa(), s).len();
                failures.extend(d_squared_failures(&dga, s));
            }
            let ok = failures.is_empty();
            match fmt {
                Format::Text => {
                    for m in &failures {
                        writeln!(ctx.out, "d^2({m:?}) != 0")?;
                    }
                    writeln!(
                        ctx.out,
                        "{}",
                        pass_line(ok, &format!("{checked} monomials checked"))
                    )?;
                }
                Format::Json => {
                    let f: Vec<String> = failures.iter().map(|m| format!("{m:?}")).collect();
                    ctx.json(&json!({"pass": ok, "checked": checked, "failures": f}))?;
                }
            }
            Ok(ok)
        }
        Cmd::Relations => {
            let dga = ctx.dga()?;
            let suite = dga.relation_suite()?;
            let ok = suite.iter().all(|(_, r)| r.is_zero());
            match fmt {
                Format::Text => {
                    for (name, r) in &suite {
                        if r.is_zero() {
                            writeln!(ctx.out, "{name}: 0")?;
                        } else {
                            writeln!(ctx.out, "{name}: {r}  <-- nonzero")?;
                        }
                    }
                    writeln!(
                        ctx.out,
                        "{}",
                        pass_line(ok, &format!("{} relations", suite.len()))
                    )?;
                }
                Format::Json => {
                    let rs: Vec<_> = suite
                        .iter()
                        .map(|(n, r)| json!({"name": n, "residue": r.to_string()}))
                        .collect();
                    ctx.json(&json!({"pass": ok, "relations": rs}))?;
                }
            }
            Ok(ok)
        }
        Cmd::Betti => {
            let dga = ctx.dga()?;
            let w = ctx.window()?;
            let b = generic_betti(&dga, &w)?;
            match fmt {
                Format::Text => {
                    for (d, v) in b.iter().rev() {
                        writeln!(ctx.out, "b^{d} = {v}")?;
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = b
                        .iter()
                        .rev()
                        .map(|(d, v)| json!({"degree": d, "betti": v}))
                        .collect();
                    ctx.json(
                        &json!({"kappa": dga.kappa(), "window": w.to_string(), "betti": rows}),
                    )?;
                }
            }
            Ok(true)
        }
        Cmd::Homology => {
            let dga = ctx.dga()?;
            let w = ctx.window()?;
            let q = ctx.hbar().unwrap_or_default();
            let groups = specialized_homology(&dga, &w, &q)?;
            match fmt {
                Format::Text => {
                    writeln!(ctx.out, "h = {q}")?;
                    for g in &groups {
                        writeln!(ctx.out, "{g}")?;
                    }
                }
                Format::Json => ctx.json(&groups)?,
            }
            Ok(true)
        }
        Cmd::H0 => {
            let dga = ctx.dga()?;
            let r = h0_presentation(&dga)?;
            match fmt {
                Format::Text => writeln!(ctx.out, "{r}")?,
                Format::Json => ctx.json(&r)?,
            }
            Ok(r.cofactors_verified)
        }
        Cmd::Basis => {
            let k = ctx.dga()?.kappa();
            let s = ctx.g.degree.unwrap_or(0);
            let b = graded_basis(k, s);
            match fmt {
                Format::Text => {
                    for m in &b.monomials {
                        writeln!(ctx.out, "{m:?}")?;
                    }
                }
                Format::Json => ctx.json(&json!({
                    "kappa": k, "degree": b.degree, "count": b.len(), "monomials": b,
                }))?,
            }
            Ok(true)
        }
        Cmd::Matrix => {
            let dga = ctx.dga()?;
            let s = ctx.g.degree.unwrap_or(1);
            let m = d_matrix(&dga, s)?;
            match (fmt, ctx.hbar()) {
                (Format::Text, None) => write!(ctx.out, "{m}")?,
                (Format::Json, None) => ctx.json(&m)?,
                (Format::Text, Some(q)) => {
                    for row in m.specialize(&q) {
                        let r: Vec<String> = row.iter().map(BigInt::to_string).collect();
                        writeln!(ctx.out, "{}", r.join(" "))?;
                    }
                }
                (Format::Json, Some(q)) => {
                    let e: Vec<Vec<String>> = m
                        .specialize(&q)
                        .iter()
                        .map(|r| r.iter().map(BigInt::to_string).collect())
                        .collect();
                    ctx.json(&json!({"rows": m.rows, "cols": m.cols, "entries": e}))?;
                }
            }
            Ok(true)
        }
        Cmd::Braid { word } => {
            let k = ctx.dga()?.kappa();
            let text = ctx.input(word)?;
            let b = parse_braid(&text, k)?;
            let mut e = eval_braid(&b);
            if let Some(q) = ctx.hbar() {
                e = e.specialize(&q);
            }
            match fmt {
                Format::Text => writeln!(ctx.out, "{e}")?,
                Format::Json => ctx.json(&e)?,
            }
            Ok(true)
        }
        Cmd::Skein => {
            let dga = ctx.dga()?;
            let k = dga.kappa();
            let mut rows = Vec::new();
            for i in 1..k {
                rows.push((format!("s{i}"), skein_residue(i, k)?.is_zero()));
            }
            let sphere = sphere_relation_class(&dga).is_ok();
            let ok = sphere && rows.iter().all(|r| r.1);
            match fmt {
                Format::Text => {
                    for (name, z) in &rows {
                        writeln!(
                            ctx.out,
                            "skein {name}: {}",
                            if *z { "0" } else { "nonzero" }
                        )?;
                    }
                    let tag = if sphere { "= d(x1)" } else { "!= d(x1)" };
                    writeln!(ctx.out, "sphere word - c {tag}")?;
                    writeln!(
                        ctx.out,
                        "{}",
                        pass_line(ok, &format!("{} generators", rows.len()))
                    )?;
                }
                Format::Json => {
                    let gens: Vec<_> = rows
                        .iter()
                        .map(|(n, z)| json!({"generator": n, "zero": z}))
                        .collect();
                    ctx.json(&json!({"pass": ok, "skein": gens, "sphere_relation_exact": sphere}))?;
                }
            }
            Ok(ok)
        }
        Cmd::Katok {
            lambda,
            epsilon,
            n,
            tol,
        } => {
            let p = KatokParams::new(parse_rational(lambda)?, parse_rational(epsilon)?)?;
            let r = monotonicity_report(*n, &p, &parse_rational(tol)?)?;
            match fmt {
                Format::Text => writeln!(ctx.out, "{r}")?,
                Format::Json => ctx.json(&r)?,
            }
            Ok(r.pass)
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        g: &cli.global,
        stdin,
        out,
    };
    match dispatch(&cli.cmd, &mut ctx) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(f) => {
            let msg = match f {
                Failure::Usage(m) => m,
                Failure::Lib(e) => e.to_string(),
                Failure::Io(e) => e.to_string(),
            };
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
