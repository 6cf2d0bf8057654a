//! Command-line front end for the exact birational-transformation toolkit.
//!
//! Every subcommand reads expressions in the shared text grammar, works in
//! exact arithmetic, and reports either in `human` mode (prose-ish lines,
//! approximate decimals clearly marked) or in `structured` mode: a single
//! `key = value` document, byte-identical across runs for identical
//! inputs, with exact rationals rendered as `num/den`.
//!
//! Exit codes: 0 on success, 1 on domain errors (for example a
//! non-birational input to `inverse`, or a parameter point off the base
//! variety), 2 on argument or expression parse errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use cremona_core::census::{
    class_count, enumerate_range, partition_ranges, CensusMode, CensusReport, PartitionCounts,
    DEFAULT_BUDGET, RNG_ALGORITHM,
};
use cremona_core::cremona::{
    certify_birational_detailed, substitute_tuple, true_degree, CertifyOutcome,
};
use cremona_core::polyring::{jacobian_det, FieldKind};
use cremona_core::text::{
    parse_family, parse_point, parse_tuple, render_family, render_point, render_tuple,
    ParseError,
};
use cremona_core::wspace::MapTuple;
use num_traits::ToPrimitive;

/// Parsed command line of the `cremona` binary.
#[derive(Parser, Debug)]
#[command(
    name = "cremona",
    version,
    about = "Exact arithmetic for birational transformations of projective n-space"
)]
struct Cli {
    /// Coefficient field: `q` (rationals) or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field_arg)]
    field: FieldKind,

    /// Ambient projective dimension n; tuples have n+1 components in
    /// variables x0..x<n>.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=9))]
    n: u8,

    /// Report style.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Human)]
    output: OutputMode,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    /// Prose-style lines; may add clearly marked approximate decimals.
    Human,
    /// One stable `key = value` document with exact values only.
    Structured,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Degree of a tuple, nominal and after stripping the common factor.
    Degree { tuple: String },
    /// Strip the common factor: reduced tuple and monic cofactor.
    Normalize { tuple: String },
    /// Jacobian determinant of the tuple.
    Jacobian { tuple: String },
    /// Decide birationality; on success print the inverse and cofactor.
    Check { tuple: String },
    /// Inverse of a birational tuple (fails on non-birational input).
    Inverse { tuple: String },
    /// Composition `first ∘ second` (apply `second`, then `first`).
    Compose { first: String, second: String },
    /// Image of a projective point under the tuple.
    Apply {
        tuple: String,
        /// Point as `c0:c1:...:cn` with exact coordinates.
        #[arg(long)]
        point: String,
    },
    /// Chordal coefficient distance squared between two tuples (over q).
    Dist { first: String, second: String },
    /// Squared distance from a tuple to the fiber of classes over a
    /// reduced reference tuple (over q).
    FiberDist {
        tuple: String,
        /// Reduced reference tuple; defaults to the identity.
        #[arg(long)]
        reference: Option<String>,
    },
    /// Operations on parametric families.
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Birationality counts over a prime field (set with --field fp:<p>).
    Census {
        #[command(subcommand)]
        cmd: CensusCmd,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// Reduced degree and identity flag at each requested point.
    Profile {
        family: String,
        /// Parameter point `c0:c1:...:ck`; repeat for several points.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
    /// The member tuple at one parameter point.
    Specialize {
        family: String,
        #[arg(long)]
        at: String,
    },
    /// Value of the generically reduced model at one parameter point
    /// (free-base families only).
    Lift {
        family: String,
        #[arg(long)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
enum CensusCmd {
    /// Sweep every projective class of degree-d tuples.
    Enumerate {
        /// Common degree d of the tuples.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        d: u8,
        /// Number of contiguous work partitions (result-invariant).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        partitions: u16,
        /// Refuse sweeps over more classes than this.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Test a reproducible random sample of distinct classes.
    Sample {
        /// Common degree d of the tuples.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        d: u8,
        /// Number of distinct classes to draw.
        #[arg(long)]
        trials: u128,
        /// Seed of the recorded pseudo-random generator.
        #[arg(long)]
        seed: u64,
    },
}

fn parse_field_arg(s: &str) -> Result<FieldKind, String> {
    if s == "q" {
        return Ok(FieldKind::Rational);
    }
    if let Some(ps) = s.strip_prefix("fp:") {
        let p: u64 = ps
            .parse()
            .map_err(|_| format!("invalid prime '{ps}' in field selector"))?;
        if !cremona_core::census::is_prime_u64(p) {
            return Err(format!("{p} is not prime"));
        }
        return Ok(FieldKind::Prime(p));
    }
    Err(format!("unknown field '{s}' (expected `q` or `fp:<prime>`)"))
}

/// Failures after successful argument parsing: expression parse errors
/// exit with 2, domain errors with 1.
enum AppError {
    Parse(String),
    Domain(String),
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> AppError {
        AppError::Parse(e.to_string())
    }
}

impl From<cremona_core::Error> for AppError {
    fn from(e: cremona_core::Error) -> AppError {
        AppError::Domain(e.to_string())
    }
}

/// An ordered `key = value` document plus human-mode-only extras.
struct Doc {
    lines: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Doc {
    fn new(op: &str, field: FieldKind, n: usize) -> Doc {
        let mut doc = Doc {
            lines: Vec::new(),
            notes: Vec::new(),
        };
        doc.push("op", op);
        doc.push("field", field);
        doc.push("n", n);
        doc
    }

    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    /// Human-mode-only line (approximations, durations, advice).
    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn render(&self, mode: OutputMode) -> String {
        let mut out = String::new();
        match mode {
            OutputMode::Structured => {
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            OutputMode::Human => {
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{k}: {v}");
                }
                for n in &self.notes {
                    let _ = writeln!(out, "{n}");
                }
            }
        }
        out
    }
}

/// Runs the command line and returns (exit code, full output text).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (e.exit_code(), e.to_string()),
    };
    let mode = cli.output;
    match dispatch(&cli) {
        Ok(doc) => (0, doc.render(mode)),
        Err(AppError::Parse(msg)) => (2, format!("error: {msg}\n")),
        Err(AppError::Domain(msg)) => (1, format!("error: {msg}\n")),
    }
}

fn dispatch(cli: &Cli) -> Result<Doc, AppError> {
    let field = cli.field;
    let n = cli.n as usize;
    let nvars = n + 1;
    match &cli.cmd {
        Cmd::Degree { tuple } => {
            let t = parse_tuple(field, nvars, tuple)?;
            let mut doc = Doc::new("degree", field, n);
            doc.push("tuple", render_tuple(&t));
            doc.push("degree", t.degree());
            doc.push("reduced_degree", true_degree(&t));
            Ok(doc)
        }
        Cmd::Normalize { tuple } => {
            let t = parse_tuple(field, nvars, tuple)?;
            let form = t.normalize();
            let mut doc = Doc::new("normalize", field, n);
            doc.push("input", render_tuple(&t));
            doc.push("reduced", render_tuple(&form.reduced));
            doc.push("cofactor", &form.cofactor);
            doc.push("reduced_degree", form.reduced.degree());
            let is_identity = form.reduced == MapTuple::identity(field, n);
            doc.push("is_identity", is_identity);
            Ok(doc)
        }
        Cmd::Jacobian { tuple } => {
            let t = parse_tuple(field, nvars, tuple)?;
            let jac = jacobian_det(t.components())?;
            let mut doc = Doc::new("jacobian", field, n);
            doc.push("tuple", render_tuple(&t));
            doc.push("jacobian", &jac);
            doc.push("is_zero", jac.is_zero());
            if let FieldKind::Prime(_) = field {
                doc.note(
                    "note: over a prime field the Jacobian does not decide birationality \
                     (it can vanish on a birational map)",
                );
            }
            Ok(doc)
        }
        Cmd::Check { tuple } => {
            let t = parse_tuple(field, nvars, tuple)?;
            let mut doc = Doc::new("check", field, n);
            doc.push("tuple", render_tuple(&t));
            match certify_birational_detailed(&t) {
                CertifyOutcome::Birational(map) => {
                    doc.push("birational", true);
                    doc.push("reduced_degree", map.forward().degree());
                    doc.push("inverse", render_tuple(map.inverse_tuple()));
                    doc.push("inverse_degree", map.inverse_tuple().degree());
                    doc.push("cofactor", map.cofactor());
                }
                CertifyOutcome::NotBirational {
                    jacobian_nonzero_char_zero,
                } => {
                    doc.push("birational", false);
                    doc.push("reduced_degree", true_degree(&t));
                    if field == FieldKind::Rational {
                        doc.push("jacobian_nonzero", jacobian_nonzero_char_zero);
                        if jacobian_nonzero_char_zero {
                            doc.note(
                                "note: the Jacobian is nonzero, so the map is dominant \
                                 but admits no inverse within the degree bound",
                            );
                        }
                    }
                }
            }
            Ok(doc)
        }
        Cmd::Inverse { tuple } => {
            let t = parse_tuple(field, nvars, tuple)?;
            match certify_birational_detailed(&t) {
                CertifyOutcome::Birational(map) => {
                    let mut doc = Doc::new("inverse", field, n);
                    doc.push("tuple", render_tuple(&t));
                    doc.push("reduced", render_tuple(map.forward()));
                    doc.push("inverse", render_tuple(map.inverse_tuple()));
                    doc.push("inverse_degree", map.inverse_tuple().degree());
                    doc.push("cofactor", map.cofactor());
                    Ok(doc)
                }
                CertifyOutcome::NotBirational { .. } => Err(AppError::Domain(String::from(
                    "the tuple is not birational",
                ))),
            }
        }
        Cmd::Compose { first, second } => {
            let f = parse_tuple(field, nvars, first)?;
            let g = parse_tuple(field, nvars, second)?;
            let comp = substitute_tuple(&f, &g)?;
            let form = comp.normalize();
            let mut doc = Doc::new("compose", field, n);
            doc.push("first", render_tuple(&f));
            doc.push("second", render_tuple(&g));
            doc.push("composition", render_tuple(&comp));
            doc.push("degree", comp.degree());
            doc.push("reduced", render_tuple(&form.reduced));
            doc.push("cofactor", &form.cofactor);
            let is_identity = form.reduced == MapTuple::identity(field, n);
            doc.push("is_identity", is_identity);
            Ok(doc)
        }
        Cmd::Apply { tuple, point } => {
            let t = parse_tuple(field, nvars, tuple)?;
            let pt = parse_point(field, point)?;
            let mut doc = Doc::new("apply", field, n);
            doc.push("tuple", render_tuple(&t));
            doc.push("point", render_point(&pt));
            match t.eval_point(&pt)? {
                Some(image) => doc.push("image", render_point(&image)),
                None => {
                    doc.push("image", "undefined");
                    doc.note("note: the point is a base point of the tuple");
                }
            }
            Ok(doc)
        }
        Cmd::Dist { first, second } => {
            let a = parse_tuple(field, nvars, first)?;
            let b = parse_tuple(field, nvars, second)?;
            let d = a.distance_sq(&b)?;
            let mut doc = Doc::new("dist", field, n);
            doc.push("first", render_tuple(&a));
            doc.push("second", render_tuple(&b));
            doc.push("distance_sq", &d);
            if let Some(x) = d.to_f64() {
                doc.note(format!("distance ~= {:.6} (approximate)", x.sqrt()));
            }
            Ok(doc)
        }
        Cmd::FiberDist { tuple, reference } => {
            let t = parse_tuple(field, nvars, tuple)?;
            let g = match reference {
                Some(src) => parse_tuple(field, nvars, src)?,
                None => MapTuple::identity(field, n),
            };
            let d = t.fiber_distance_sq(&g)?;
            let mut doc = Doc::new("fiber_dist", field, n);
            doc.push("tuple", render_tuple(&t));
            doc.push("reference", render_tuple(&g));
            doc.push("fiber_distance_sq", &d);
            if let Some(x) = d.to_f64() {
                doc.note(format!("distance ~= {:.6} (approximate)", x.sqrt()));
            }
            Ok(doc)
        }
        Cmd::Family { cmd } => family_cmd(field, n, nvars, cmd),
        Cmd::Census { cmd } => census_cmd(field, n, cmd),
    }
}

fn family_cmd(
    field: FieldKind,
    n: usize,
    nvars: usize,
    cmd: &FamilyCmd,
) -> Result<Doc, AppError> {
    match cmd {
        FamilyCmd::Profile { family, at } => {
            let fam = parse_family(field, nvars, family)?;
            let points = at
                .iter()
                .map(|src| parse_point(field, src))
                .collect::<Result<Vec<_>, _>>()?;
            let profile = fam.degree_profile(&points)?;
            let mut doc = Doc::new("family_profile", field, n);
            doc.push("family", render_family(&fam));
            doc.push("points", profile.entries.len());
            for (i, e) in profile.entries.iter().enumerate() {
                doc.push(&format!("point_{i}"), render_point(&e.point));
                doc.push(&format!("reduced_degree_{i}"), e.reduced_degree);
                doc.push(&format!("is_identity_{i}"), e.is_identity);
            }
            Ok(doc)
        }
        FamilyCmd::Specialize { family, at } => {
            let fam = parse_family(field, nvars, family)?;
            let pt = parse_point(field, at)?;
            let t = fam.specialize(&pt)?;
            let form = t.normalize();
            let mut doc = Doc::new("family_specialize", field, n);
            doc.push("family", render_family(&fam));
            doc.push("at", render_point(&pt));
            doc.push("tuple", render_tuple(&t));
            doc.push("reduced", render_tuple(&form.reduced));
            doc.push("cofactor", &form.cofactor);
            doc.push("reduced_degree", form.reduced.degree());
            Ok(doc)
        }
        FamilyCmd::Lift { family, at } => {
            let fam = parse_family(field, nvars, family)?;
            let pt = parse_point(field, at)?;
            let t = fam.reduced_lift_at_point(&pt)?;
            let mut doc = Doc::new("family_lift", field, n);
            doc.push("family", render_family(&fam));
            doc.push("at", render_point(&pt));
            doc.push("lift", render_tuple(&t));
            doc.push("lift_degree", t.degree());
            Ok(doc)
        }
    }
}

fn census_field(field: FieldKind) -> Result<u64, AppError> {
    match field {
        FieldKind::Prime(p) => Ok(p),
        FieldKind::Rational => Err(AppError::Domain(String::from(
            "the census runs over a prime field; pass --field fp:<p>",
        ))),
    }
}

fn census_doc(field: FieldKind, report: &CensusReport, mode_line: &str) -> Doc {
    let op = match report.mode {
        CensusMode::Exhaustive => "census_enumerate",
        CensusMode::Sample { .. } => "census_sample",
    };
    let mut doc = Doc::new(op, field, report.n);
    doc.push("d", report.d);
    doc.push("p", report.p);
    doc.push("total_classes", report.total_classes);
    doc.push("examined", report.examined);
    doc.push("birational", report.birational);
    for (i, count) in report.strata.iter().enumerate() {
        doc.push(&format!("stratum_{}", i + 1), count);
    }
    doc.push("mode", mode_line);
    if let CensusMode::Sample { trials, seed, rng } = &report.mode {
        doc.push("trials", trials);
        doc.push("seed", seed);
        doc.push("rng", rng);
    }
    // Wall time varies run to run, so it stays out of the structured
    // document; the human report shows it.
    doc.note(format!("duration: {} ms", report.duration_ms));
    doc
}

fn census_cmd(field: FieldKind, n: usize, cmd: &CensusCmd) -> Result<Doc, AppError> {
    let p = census_field(field)?;
    match cmd {
        CensusCmd::Enumerate {
            d,
            partitions,
            budget,
        } => {
            let d = *d as usize;
            let start = Instant::now();
            let total = class_count(n, d, p)?;
            if total > *budget {
                return Err(cremona_core::Error::BudgetExceeded {
                    required: total,
                    budget: *budget,
                }
                .into());
            }
            let ranges = partition_ranges(total, *partitions as usize);
            let counts = sweep_partitions(n, d, p, &ranges)?;
            let mut report = CensusReport {
                n,
                d,
                p,
                total_classes: total,
                examined: counts.examined,
                birational: counts.birational,
                strata: counts.strata.clone(),
                mode: CensusMode::Exhaustive,
                duration_ms: 0,
            };
            report.duration_ms = start.elapsed().as_millis() as u64;
            Ok(census_doc(field, &report, "exhaustive"))
        }
        CensusCmd::Sample { d, trials, seed } => {
            let d = *d as usize;
            let start = Instant::now();
            let mut report = cremona_core::census::sample_random(n, d, p, *trials, *seed)?;
            report.duration_ms = start.elapsed().as_millis() as u64;
            debug_assert_eq!(
                report.mode,
                CensusMode::Sample {
                    trials: *trials,
                    seed: *seed,
                    rng: RNG_ALGORITHM
                }
            );
            Ok(census_doc(field, &report, "sample"))
        }
    }
}

/// Runs the partition ranges, on worker threads when there are several;
/// the merge order is fixed, and merging is commutative anyway.
fn sweep_partitions(
    n: usize,
    d: usize,
    p: u64,
    ranges: &[(u128, u128)],
) -> Result<PartitionCounts, AppError> {
    let mut merged = PartitionCounts::empty(d);
    if ranges.len() <= 1 {
        for &(start, end) in ranges {
            merged.merge(&enumerate_range(n, d, p, start, end)?);
        }
        return Ok(merged);
    }
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(start, end)| scope.spawn(move || enumerate_range(n, d, p, start, end)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect::<Vec<_>>()
    });
    for r in results {
        merged.merge(&r?);
    }
    Ok(merged)
}
