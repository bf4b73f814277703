//! Command-line front end. [`run`] maps a parsed command to an exit code and a report;
//! the binary only prints the report and exits with the code.
//!
//! Exit codes: 0 verified or certified, 1 refuted, 2 inconclusive, 3 input error.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::autom::{henon_paper, parse_automorphism, Automorphism, IntMat2};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::freeness::{
    self, check_free, degree_doubling_certificate, verify_relation, Doubling, Relation, Verdict,
};
use crate::growth::{filtration_dims, gk_estimate, GrowthClass};
use crate::monomial::{
    self, classify, exp_set_dimensions, parity_obstruction, valuation_certificate, Parity,
};
use crate::ring::{parse_poly, weighted_degree, Mode, Poly, WeightedDegree};
use crate::skew::{Alphabet, Letter, SkewPoly};

pub const SCHEMA: &str = "skewfree/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "skewfree",
    version,
    about = "Freeness of k{atⁿ, btⁿ} in skew polynomial rings over k[x,y] and k[x^±1,y^±1]"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SigmaArgs {
    /// `monomial:a,b;c,d`, `elementary:a,b,c,p(y)`, `henon:a,b`, `custom:σx|σy|σ⁻¹x|σ⁻¹y` or `identity`.
    #[arg(long)]
    pub sigma: String,
    /// Work over k[x^±1, y^±1] for `custom` and `identity`.
    #[arg(long)]
    pub laurent: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Spectral branch, order, relation catalog and power hints of a monomial automorphism.
    Classify {
        #[arg(short = 'M', long = "matrix", allow_hyphen_values = true)]
        matrix: String,
    },
    /// Ranks of the graded components of k{a tᵖ, b tᵖ}, with witness or certificate.
    CheckFree {
        #[command(flatten)]
        sigma: SigmaArgs,
        /// The two coefficients, e.g. `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Valuation certificate for k{x tᵖ, y tᵖ} (with -M) or degree doubling for g (with --sigma).
    Certify {
        #[arg(short = 'M', long = "matrix", allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Element whose iterates must double in degree.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long, default_value = "1,1")]
        weights: String,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
    /// Checks that a relation such as `(xt)^2(yt) - (yt)^2(xt)` holds in the skew ring.
    VerifyRelation {
        #[command(flatten)]
        sigma: SigmaArgs,
        #[arg(allow_hyphen_values = true)]
        relation: String,
    },
    /// Dimensions dim Vₙ for n = 1..depth: exponent sumsets with -M, exact ranks with --sigma.
    Dims {
        #[arg(short = 'M', long = "matrix", allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        laurent: bool,
        #[arg(long, default_value = "x,y", allow_hyphen_values = true)]
        gens: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Weighted degrees of σⁿ(x) for σ(x) = 1 + y − a x², σ(y) = b x.
    HenonDegrees {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "2,1")]
        weights: String,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
    /// dim Wⁿ for W = span(1, gens) and a window-fit growth estimate.
    Growth {
        #[command(flatten)]
        sigma: SigmaArgs,
        /// Skew elements separated by commas, e.g. `x,y,y^2,t` or `t,xt,yt`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(short = 'N', long = "max-n", default_value_t = 20)]
        n: usize,
        /// Estimate from the top-degree (graded) series instead of Wⁿ.
        #[arg(long)]
        graded: bool,
    },
    /// Whether a+b ≡ c+d (mod 2) keeps k{xt, yt} from being big.
    Parity {
        #[arg(short = 'M', long = "matrix", allow_hyphen_values = true)]
        matrix: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::CheckFree { .. } => "check-free",
            Command::Certify { .. } => "certify",
            Command::VerifyRelation { .. } => "verify-relation",
            Command::Dims { .. } => "dims",
            Command::HenonDegrees { .. } => "henon-degrees",
            Command::Growth { .. } => "growth",
            Command::Parity { .. } => "parity",
        }
    }
}

/// Exit code and rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            Outcome {
                code,
                output: e.to_string(),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let command = cli.command.name();
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let code = match e {
                Error::ResourceCap(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_INPUT,
            };
            Report {
                code,
                json: json!({ "error": e.to_string() }),
                text: format!("error: {e}"),
            }
        }
    };
    let output = if cli.json {
        let mut v = json!({ "schema": SCHEMA, "command": command, "exit_code": report.code });
        if let (Value::Object(dst), Value::Object(src)) = (&mut v, report.json) {
            dst.extend(src);
        }
        serde_json::to_string_pretty(&v).expect("JSON values serialize")
    } else {
        report.text
    };
    Outcome {
        code: report.code,
        output,
    }
}

fn sigma_from(spec: &str, laurent: bool) -> Result<Arc<Automorphism>> {
    let sigma = match spec.trim() {
        "identity" => Automorphism::identity(if laurent { Mode::Laurent } else { Mode::Poly }),
        s => parse_automorphism(s, laurent)?,
    };
    Ok(Arc::new(sigma))
}

fn scalar(s: &str) -> Result<Rat> {
    parse_poly(s, Mode::Poly)?
        .as_constant()
        .ok_or_else(|| Error::Parse(format!("{s:?} is not a scalar")))
}

fn weights(s: &str) -> Result<WeightedDegree> {
    let bad = || Error::Parse(format!("expected weights \"w_x,w_y\", got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    WeightedDegree::new(
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    )
}

/// Splits on commas outside parentheses.
fn split_list(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().expect("nonempty").push(c);
    }
    out.into_iter()
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

fn generator_pair(s: &str, mode: Mode) -> Result<(Poly, Poly)> {
    let parts = split_list(s);
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected two generators, got {s:?}")));
    }
    Ok((parse_poly(&parts[0], mode)?, parse_poly(&parts[1], mode)?))
}

fn skew_generator(s: &str, sigma: &Arc<Automorphism>) -> Result<SkewPoly> {
    if s.contains('t') {
        let l = Letter::parse(s, sigma.mode())?;
        SkewPoly::term(sigma.clone(), l.coeff, l.t_power)
    } else {
        SkewPoly::term(sigma.clone(), parse_poly(s, sigma.mode())?, 0)
    }
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Classify { matrix } => {
            let r = classify(IntMat2::parse(matrix)?)?;
            let mut text = format!(
                "M = {}  trace {}  det {}\nρ = {} ≈ {:.6}\nbranch {}",
                r.matrix,
                r.trace,
                r.det,
                r.rho,
                r.rho.approx(),
                r.branch.name()
            );
            if let Some(k) = r.order {
                text += &format!(", order {k}");
            }
            for c in &r.catalog_relations {
                text += &format!(
                    "\n[{}] {} = 0: {}",
                    c.clause,
                    c.relation,
                    if c.verified { "verified" } else { "FAILED" }
                );
            }
            if let Some(p) = r.free_generators_hint {
                text += &format!("\nk{{xt^{p}, yt^{p}}} is free (least p with ρ(M^p) ≥ 2)");
            }
            Ok(Report {
                code: EXIT_OK,
                json: r.to_json(),
                text,
            })
        }
        Command::CheckFree {
            sigma,
            gens,
            power,
            depth,
        } => {
            let s = sigma_from(&sigma.sigma, sigma.laurent)?;
            let (a, b) = generator_pair(gens, s.mode())?;
            let rep = check_free(&s, &a, &b, *power, *depth)?;
            let code = match &rep.verdict {
                Verdict::FreeUpToDepth => EXIT_OK,
                Verdict::NotFree { witness, .. } => {
                    if !verify_relation(witness) {
                        return Err(Error::Invalid(format!(
                            "witness {witness} failed re-verification"
                        )));
                    }
                    EXIT_REFUTED
                }
                Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            };
            let mut text = format!("dims {}\n{}", dims_text(&rep.dims), rep.verdict.name());
            match &rep.verdict {
                Verdict::NotFree { degree, witness } => {
                    text += &format!(" at degree {degree}: {witness} = 0")
                }
                Verdict::Inconclusive { reason } => text += &format!(": {reason}"),
                Verdict::FreeUpToDepth => {
                    let name = rep.certificate.as_ref().map_or("none", |c| c.name());
                    let scope = if rep.is_unbounded_claim() {
                        "all degrees"
                    } else {
                        "bounded evidence"
                    };
                    text += &format!(", certificate {name} ({scope})");
                }
            }
            Ok(Report {
                code,
                json: rep.to_json(),
                text,
            })
        }
        Command::Certify {
            matrix,
            sigma,
            power,
            g,
            weights: w,
            horizon,
        } => match (matrix, sigma) {
            (Some(m), None) => {
                let m = IntMat2::parse(m)?;
                match valuation_certificate(m, *power) {
                    monomial::ValuationCertificate::Certified { power, beta, alpha } => Ok(Report {
                        code: EXIT_OK,
                        json: json!({
                            "kind": "VALUATION", "status": "CERTIFIED", "matrix": m, "power": power,
                            "beta": beta, "alpha": alpha, "scope": "all degrees",
                        }),
                        text: format!("CERTIFIED: k{{xt^{power}, yt^{power}}} is free; β = {beta}, α = {alpha}"),
                    }),
                    monomial::ValuationCertificate::NotApplicable(reason) => Ok(Report {
                        code: EXIT_INCONCLUSIVE,
                        json: json!({
                            "kind": "VALUATION", "status": "NOT_APPLICABLE", "matrix": m, "power": power,
                            "reason": reason,
                        }),
                        text: format!("NOT_APPLICABLE: {reason}"),
                    }),
                }
            }
            (None, Some(spec)) => {
                let s = sigma_from(spec, false)?;
                let g = parse_poly(
                    g.as_deref()
                        .ok_or_else(|| Error::Invalid("--g is required with --sigma".into()))?,
                    s.mode(),
                )?;
                let w = weights(w)?;
                let tau = crate::autom::power(&s, *power as i64);
                let out = degree_doubling_certificate(&tau, &g, w, *horizon)?;
                let (code, status, m) = match &out {
                    Doubling::Certified { .. } => (EXIT_OK, "CERTIFIED", None),
                    Doubling::Failed { m, .. } => (EXIT_INCONCLUSIVE, "FAILED", Some(*m)),
                };
                Ok(Report {
                    code,
                    json: json!({
                        "kind": "DEGREE_DOUBLING", "status": status, "g": g.to_string(), "power": power,
                        "weights": [w.w_x, w.w_y], "horizon": horizon, "degrees": out.degrees(),
                        "first_violation": m, "scope": format!("checked to horizon {horizon}"),
                    }),
                    text: format!("{status}: degrees {:?}", out.degrees()),
                })
            }
            _ => Err(Error::Invalid(
                "certify needs exactly one of -M or --sigma".into(),
            )),
        },
        Command::VerifyRelation { sigma, relation } => {
            let s = sigma_from(&sigma.sigma, sigma.laurent)?;
            let r = Relation::parse(Alphabet::new(s, Vec::new())?, relation)?;
            let ok = verify_relation(&r);
            Ok(Report {
                code: if ok { EXIT_OK } else { EXIT_REFUTED },
                json: json!({ "relation": r.to_string(), "holds": ok }),
                text: format!("{r} = 0: {}", if ok { "holds" } else { "does not hold" }),
            })
        }
        Command::Dims {
            matrix,
            sigma,
            laurent,
            gens,
            depth,
        } => {
            let (method, dims) = match (matrix, sigma) {
                (Some(m), None) => (
                    "exponent sumset",
                    exp_set_dimensions(IntMat2::parse(m)?, *depth)?,
                ),
                (None, Some(spec)) => {
                    let s = sigma_from(spec, *laurent)?;
                    let (a, b) = generator_pair(gens, s.mode())?;
                    (
                        "exact rank",
                        freeness::component_dimensions(&s, &a, &b, *depth)?,
                    )
                }
                _ => {
                    return Err(Error::Invalid(
                        "dims needs exactly one of -M or --sigma".into(),
                    ))
                }
            };
            let expected: Vec<usize> = (1..=*depth).map(|n| 1usize << n).collect();
            Ok(Report {
                code: EXIT_OK,
                json: json!({ "method": method, "dims": dims, "expected": expected }),
                text: format!("dims ({method}) {}", dims_text(&dims)),
            })
        }
        Command::HenonDegrees {
            a,
            b,
            weights: w,
            horizon,
        } => {
            let s = henon_paper(scalar(a)?, scalar(b)?)?;
            let w = weights(w)?;
            let mut f = Poly::x(Mode::Poly);
            let mut degrees = vec![weighted_degree(&f, w)?];
            for _ in 0..*horizon {
                f = s.apply(&f)?;
                degrees.push(weighted_degree(&f, w)?);
            }
            let doubling = degree_doubling_certificate(&s, &Poly::y(Mode::Poly), w, *horizon)?;
            let code = if doubling.is_certified() {
                EXIT_OK
            } else {
                EXIT_INCONCLUSIVE
            };
            Ok(Report {
                code,
                json: json!({
                    "sigma": s.to_string(), "weights": [w.w_x, w.w_y],
                    "degrees_of_iterates_of_x": degrees,
                    "doubling_for_y": if doubling.is_certified() { "CERTIFIED" } else { "FAILED" },
                    "degrees_of_iterates_of_y": doubling.degrees(),
                }),
                text: format!(
                    "{s}\ndeg σⁿ(x): {:?}\ndoubling for y: {}",
                    degrees,
                    if doubling.is_certified() {
                        "CERTIFIED"
                    } else {
                        "FAILED"
                    }
                ),
            })
        }
        Command::Growth {
            sigma,
            gens,
            n,
            graded,
        } => {
            let s = sigma_from(&sigma.sigma, sigma.laurent)?;
            let gens: Vec<SkewPoly> = split_list(gens)
                .iter()
                .map(|g| skew_generator(g, &s))
                .collect::<Result<_>>()?;
            let series = filtration_dims(&gens, *n)?;
            let target = if *graded {
                series.graded().ok_or_else(|| {
                    Error::Invalid("graded series needs homogeneous generators".into())
                })?
            } else {
                series.clone()
            };
            let est = gk_estimate(&target)?;
            let class = match est.class {
                GrowthClass::Polynomial { degree } => format!("POLYNOMIAL({degree})"),
                GrowthClass::Exponential { rate } => format!("EXPONENTIAL(rate ≈ {rate:.3})"),
            };
            Ok(Report {
                code: EXIT_OK,
                json: json!({ "series": series.to_json(), "estimate_of": if *graded { "graded" } else { "filtration" }, "estimate": est.to_json() }),
                text: format!(
                    "{}\ndims {}\n{class}, raw slope {:.3} (window fit, heuristic)",
                    series.basis_spec,
                    dims_text(&target.dims),
                    est.raw_slope
                ),
            })
        }
        Command::Parity { matrix } => {
            let m = IntMat2::parse(matrix)?;
            let p = parity_obstruction(m);
            let name = match p {
                Parity::Obstructed => "OBSTRUCTED",
                Parity::NotObstructed => "NOT_OBSTRUCTED",
            };
            Ok(Report {
                code: EXIT_OK,
                json: json!({ "matrix": m, "parity": name }),
                text: format!("{m}: {name}"),
            })
        }
    }
}
