//! Front end for `specsemi`: structure files in, reports and DOT out.

pub mod dot;
pub mod error;
pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use specsemi::factory::{
    mod_ideal, powerset_from_preorder, random_spec_semilattice, GroundSet, Ideal,
};
use specsemi::verifier::{
    check_class_order, check_closure_well_defined, check_congruence, check_pair_preorder,
    check_remarks, check_universal_property, check_universal_property_z, check_witness_elimination,
    check_z_relation, VerificationReport, DEFAULT_HOM_BUDGET,
};
use specsemi::{
    build_free_extension_with, build_z_extension_with, enumerate_homs, lift_hom, lift_hom_z,
    BuildOptions, ClosureSet, Element, Extension, HomKind, Homomorphism, SpecSemilattice,
};

pub use error::CliError;
use format::{parse_structure, serialize_structure, Structure, Validation};

#[derive(Debug, Parser)]
#[command(
    name = "specsemi",
    version,
    about = "Finite specialization semilattices and their free principal extensions"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest source structure an extension may be built over.
    #[arg(long, global = true, default_value_t = 10)]
    pub cap: usize,

    /// Largest structure accepted from a file.
    #[arg(long, global = true, default_value_t = 64)]
    pub structure_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    /// Keep closures: bare `--z` uses the file's `z`, `--z a,b` names elements.
    #[arg(long, num_args = 0..=1, default_missing_value = "")]
    pub z: Option<String>,

    /// Quotient only normal-form pairs.
    #[arg(long)]
    pub normalize: bool,

    /// Cross-check against the brute-force oracles.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check join laws, specialization axioms, closures and `z`.
    Check { file: PathBuf },
    /// Build the free (or `Z`-) extension and print its classes.
    Extend {
        file: PathBuf,
        #[command(flatten)]
        ext: ExtendArgs,
    },
    /// Lift a homomorphism `S -> T` to the extension of `S`.
    Lift {
        source: PathBuf,
        target: PathBuf,
        /// The map as `a->x,b->y,...` over element labels.
        #[arg(long)]
        hom: String,
        #[command(flatten)]
        ext: ExtendArgs,
    },
    /// Check the universal property against a target (default: the source).
    Verify {
        file: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        /// Most candidate maps a homomorphism enumeration may examine.
        #[arg(long, default_value_t = DEFAULT_HOM_BUDGET)]
        budget: u64,
        #[command(flatten)]
        ext: ExtendArgs,
    },
    /// Print a Hasse diagram in DOT.
    ExportDot {
        file: PathBuf,
        /// Draw the extension instead of the structure.
        #[arg(long)]
        extend: bool,
        #[command(flatten)]
        ext: ExtendArgs,
    },
    /// Generate a structure file.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Element count for `random`, ground-set size otherwise.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edges `x->y` (x below y) of the preorder for `powerset`.
        #[arg(long)]
        preorder: Option<String>,
        /// A member of the ideal as comma-separated points; repeatable.
        #[arg(long)]
        ideal: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Random,
    Powerset,
    Ideal,
}

/// What a run printed and whether every requested check passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(output: String) -> Self {
        Outcome {
            output,
            passed: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn load(path: &Path, cap: usize, validation: Validation) -> Result<Structure, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut st = parse_structure(&path.display().to_string(), &text, cap, validation)?;
    if st.name.is_empty() {
        st.name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    Ok(st)
}

/// Splits on commas outside braces, so labels like `{p,q}` survive.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|x| !x.is_empty());
    out
}

fn element(s: &SpecSemilattice, label: &str) -> Result<Element, CliError> {
    s.base()
        .index_of(label)
        .ok_or_else(|| CliError::Usage(format!("no element labelled {label:?}")))
}

/// Parses `a->x,b->y` into a table; every source label must appear once.
pub fn parse_hom(
    s: &SpecSemilattice,
    t: &SpecSemilattice,
    text: &str,
) -> Result<Vec<Element>, CliError> {
    let mut table = vec![None; s.size()];
    for entry in split_top(text) {
        let (a, x) = entry
            .split_once("->")
            .ok_or_else(|| CliError::Usage(format!("map entry {entry:?} is not `a->x`")))?;
        let a = element(s, a.trim())?;
        if table[a].is_some() {
            return Err(CliError::Usage(format!("{} mapped twice", s.label(a))));
        }
        table[a] = Some(element(t, x.trim())?);
    }
    table
        .iter()
        .enumerate()
        .map(|(a, x)| x.ok_or_else(|| CliError::Usage(format!("{} is not mapped", s.label(a)))))
        .collect()
}

fn resolve_z(st: &Structure, arg: &Option<String>) -> Result<Option<ClosureSet>, CliError> {
    match arg.as_deref() {
        None => Ok(None),
        Some("") => match st.closure_set()? {
            Some(z) => Ok(Some(z)),
            None => Err(CliError::Usage(format!("{} has no `z` field", st.name))),
        },
        Some(list) => {
            let members = split_top(list)
                .into_iter()
                .map(|l| element(&st.spec, l))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Some(ClosureSet::new(&st.spec, members)?))
        }
    }
}

fn build(
    cli: &Cli,
    st: &Structure,
    args: &ExtendArgs,
) -> Result<(Extension, Option<ClosureSet>), CliError> {
    let z = resolve_z(st, &args.z)?;
    let opts = BuildOptions {
        cap: cli.cap,
        normalize: args.normalize,
    };
    let e = match &z {
        Some(z) => build_z_extension_with(&st.spec, z, &opts)?,
        None => build_free_extension_with(&st.spec, &opts)?,
    };
    Ok((e, z))
}

fn oracle_reports(
    st: &Structure,
    e: &Extension,
    z: Option<&ClosureSet>,
) -> Result<Vec<VerificationReport>, CliError> {
    let mut reports = vec![
        check_witness_elimination(&st.spec)?,
        check_pair_preorder(e.space()),
        check_congruence(e.space()),
        check_closure_well_defined(e.space()),
        check_class_order(e),
    ];
    if let Some(z) = z {
        reports.push(check_z_relation(&st.spec, z)?);
    }
    Ok(reports)
}

fn report_json(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn labels_of(s: &SpecSemilattice, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|&x| s.label(x).to_string()).collect()
}

fn cmd_check(cli: &Cli, file: &Path) -> Result<Outcome, CliError> {
    let st = load(file, cli.structure_cap, Validation::ShapeOnly)?;
    let s = &st.spec;
    let join = s.base().validate_join_table();
    let axioms = if join.ok() {
        Some(s.validate_specialization()?)
    } else {
        None
    };
    let axioms_ok = axioms.as_ref().is_some_and(|a| a.ok());
    let remarks = axioms_ok.then(|| check_remarks(s));
    let closures = s.closures();
    let z_result = match (&st.z, axioms_ok) {
        (Some(z), true) => Some(
            ClosureSet::new(s, z.iter().copied())
                .map(|_| ())
                .map_err(|e| e.to_string()),
        ),
        _ => None,
    };
    let passed = axioms_ok
        && remarks.as_ref().is_some_and(|r| r.passed())
        && z_result.as_ref().is_none_or(|r| r.is_ok());

    if cli.json {
        let v = json!({
            "name": st.name,
            "size": s.size(),
            "join_laws": join.violations,
            "axioms": axioms.as_ref().map(|a| &a.violations),
            "closures": closures.iter().map(|k| k.map(|k| s.label(k).to_string())).collect::<Vec<_>>(),
            "remarks": remarks.as_ref().map(report_json),
            "z": z_result.as_ref().map(|r| r.clone().err().unwrap_or_else(|| "ok".into())),
            "passed": passed,
        });
        return Ok(Outcome {
            output: format!("{v:#}\n"),
            passed,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "structure {:?}: {} element(s)", st.name, s.size());
    let _ = writeln!(out, "join laws: {join}");
    match &axioms {
        Some(a) => {
            let _ = writeln!(out, "specialization axioms: {a}");
        }
        None => out.push_str("specialization axioms: skipped\n"),
    }
    let ks: Vec<String> = s
        .elements()
        .map(|a| match closures[a] {
            Some(k) => format!("{} -> {}", s.label(a), s.label(k)),
            None => format!("{} -> none", s.label(a)),
        })
        .collect();
    let _ = writeln!(out, "closures: {}", ks.join(", "));
    if let Some(r) = &remarks {
        let _ = writeln!(out, "{r}");
    }
    if let Some(r) = &z_result {
        let _ = writeln!(out, "z: {}", r.clone().err().unwrap_or_else(|| "ok".into()));
    }
    let _ = writeln!(out, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(Outcome {
        output: out,
        passed,
    })
}

fn cmd_extend(cli: &Cli, file: &Path, args: &ExtendArgs) -> Result<Outcome, CliError> {
    let st = load(file, cli.structure_cap, Validation::Full)?;
    let (e, z) = build(cli, &st, args)?;
    let reports = if args.oracle {
        oracle_reports(&st, &e, z.as_ref())?
    } else {
        Vec::new()
    };
    let passed = reports.iter().all(|r| r.passed());
    let r = e.result();
    let source_of = |c: Element| st.spec.elements().find(|&a| e.upsilon()[a] == c);
    if cli.json {
        let classes: Vec<Value> = (0..e.class_count())
            .map(|c| {
                json!({
                    "class": e.class_label(c),
                    "closure": e.class_label(e.closure(c)),
                    "source": source_of(c).map(|a| st.spec.label(a).to_string()),
                    "members": e.members(c).iter().map(|p| p.display(st.spec.base()).to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let covers: Vec<(String, String)> = r
            .base()
            .covers()
            .into_iter()
            .map(|(x, y)| (e.class_label(x), e.class_label(y)))
            .collect();
        let v = json!({
            "name": st.name,
            "z": z.as_ref().map(|z| labels_of(&st.spec, z.members())),
            "classes": classes,
            "covers": covers,
            "oracle": reports.iter().map(report_json).collect::<Vec<_>>(),
            "passed": passed,
        });
        return Ok(Outcome {
            output: format!("{v:#}\n"),
            passed,
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "extension of {:?}: {} class(es) from {} element(s)",
        st.name,
        e.class_count(),
        st.spec.size()
    );
    if let Some(z) = &z {
        let _ = writeln!(
            out,
            "z: {{{}}}",
            labels_of(&st.spec, z.members()).join(", ")
        );
    }
    let width = (0..e.class_count())
        .map(|c| e.class_label(c).len())
        .max()
        .unwrap_or(0);
    for c in 0..e.class_count() {
        let src = source_of(c)
            .map(|a| format!("  = υ({})", st.spec.label(a)))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {c:>3}  {:<width$}  K = {}{src}",
            e.class_label(c),
            e.class_label(e.closure(c))
        );
    }
    let covers: Vec<String> = r
        .base()
        .covers()
        .into_iter()
        .map(|(x, y)| format!("{} < {}", e.class_label(x), e.class_label(y)))
        .collect();
    let _ = writeln!(out, "covers: {}", covers.join(", "));
    for rep in &reports {
        let _ = writeln!(out, "{rep}");
    }
    Ok(Outcome {
        output: out,
        passed,
    })
}

fn cmd_lift(
    cli: &Cli,
    source: &Path,
    target: &Path,
    hom: &str,
    args: &ExtendArgs,
) -> Result<Outcome, CliError> {
    let st = load(source, cli.structure_cap, Validation::Full)?;
    let tt = load(target, cli.structure_cap, Validation::Full)?;
    let table = parse_hom(&st.spec, &tt.spec, hom)?;
    let eta = Homomorphism::new(&st.spec, &tt.spec, table, HomKind::Spec)?;
    let (e, z) = build(cli, &st, args)?;
    let lifted = match &z {
        Some(z) => lift_hom_z(&e, &tt.spec, &eta, z)?,
        None => lift_hom(&e, &tt.spec, &eta)?,
    };
    let mut passed = true;
    let mut oracle_note = None;
    if args.oracle {
        let factoring: Vec<Homomorphism> = enumerate_homs(e.result(), &tt.spec, HomKind::KHom)?
            .into_iter()
            .filter(|g| {
                st.spec
                    .elements()
                    .all(|a| g.apply(e.upsilon()[a]) == eta.apply(a))
            })
            .collect();
        passed = factoring.len() == 1 && factoring[0].table() == lifted.table();
        oracle_note = Some(format!(
            "oracle: {} factoring K-homomorphism(s), {}",
            factoring.len(),
            if passed { "matches" } else { "MISMATCH" }
        ));
    }
    let rows: Vec<(String, String)> = (0..e.class_count())
        .map(|c| (e.class_label(c), tt.spec.label(lifted.apply(c)).to_string()))
        .collect();
    if cli.json {
        let v = json!({ "map": rows, "oracle": oracle_note, "passed": passed });
        return Ok(Outcome {
            output: format!("{v:#}\n"),
            passed,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "lift of {:?} -> {:?}:", st.name, tt.name);
    for (c, x) in rows {
        let _ = writeln!(out, "  {c} -> {x}");
    }
    if let Some(n) = oracle_note {
        let _ = writeln!(out, "{n}");
    }
    Ok(Outcome {
        output: out,
        passed,
    })
}

fn cmd_verify(
    cli: &Cli,
    file: &Path,
    against: Option<&Path>,
    budget: u64,
    args: &ExtendArgs,
) -> Result<Outcome, CliError> {
    let st = load(file, cli.structure_cap, Validation::Full)?;
    let tt = match against {
        Some(p) => load(p, cli.structure_cap, Validation::Full)?,
        None => st.clone(),
    };
    let (e, z) = build(cli, &st, args)?;
    // surface an oversized search as a resource error before any work
    let irr = e.result().base().join_irreducibles().len();
    let estimate = (tt.spec.size() as f64).powi(irr as i32);
    if estimate > budget as f64 {
        return Err(specsemi::Error::BudgetExceeded {
            estimate,
            bound: budget,
        }
        .into());
    }
    let mut reports = vec![match &z {
        Some(z) => check_universal_property_z(&st.spec, z, &e, &tt.spec)?,
        None => check_universal_property(&st.spec, &e, &tt.spec)?,
    }];
    if args.oracle {
        reports.extend(oracle_reports(&st, &e, z.as_ref())?);
    }
    let passed = reports.iter().all(|r| r.passed());
    if cli.json {
        let v = json!({
            "source": st.name,
            "target": tt.name,
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
            "passed": passed,
        });
        return Ok(Outcome {
            output: format!("{v:#}\n"),
            passed,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "{:?} against {:?}", st.name, tt.name);
    for r in &reports {
        let _ = writeln!(out, "{r}");
    }
    Ok(Outcome {
        output: out,
        passed,
    })
}

fn cmd_export_dot(
    cli: &Cli,
    file: &Path,
    extend: bool,
    args: &ExtendArgs,
) -> Result<Outcome, CliError> {
    let st = load(file, cli.structure_cap, Validation::Full)?;
    if extend {
        let (e, _) = build(cli, &st, args)?;
        Ok(Outcome::pass(dot::extension_dot(
            &format!("{} extension", st.name),
            &e,
        )))
    } else {
        Ok(Outcome::pass(dot::structure_dot(&st.name, &st.spec)))
    }
}

fn point_mask(g: GroundSet, names: &str) -> Result<usize, CliError> {
    names
        .split(',')
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .try_fold(0usize, |m, n| {
            g.point_index(n)
                .map(|i| m | 1 << i)
                .ok_or_else(|| CliError::Usage(format!("unknown point {n:?}")))
        })
}

fn cmd_gen(
    kind: GenKind,
    n: usize,
    seed: u64,
    preorder: Option<&str>,
    ideal: &[String],
    name: Option<&str>,
) -> Result<Outcome, CliError> {
    let (default_name, spec) = match kind {
        GenKind::Random => (
            format!("random-{seed}-n{n}"),
            random_spec_semilattice(seed, n)?,
        ),
        GenKind::Powerset => {
            let g = GroundSet::new(n)?;
            let mut pre: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            for edge in preorder.map(split_top).unwrap_or_default() {
                let (x, y) = edge.split_once("->").ok_or_else(|| {
                    CliError::Usage(format!("preorder edge {edge:?} is not `x->y`"))
                })?;
                let bit = |p: &str| point_mask(g, p).map(|m| m.trailing_zeros() as usize);
                pre.push((bit(x)?, bit(y)?));
            }
            (format!("powerset{n}"), powerset_from_preorder(g, &pre)?.0)
        }
        GenKind::Ideal => {
            let g = GroundSet::new(n)?;
            let gens = ideal
                .iter()
                .map(|m| point_mask(g, m))
                .collect::<Result<Vec<_>, _>>()?;
            (format!("mod-ideal{n}"), mod_ideal(&Ideal::new(g, &gens)?)?)
        }
    };
    let st = Structure {
        name: name.map(str::to_string).unwrap_or(default_name),
        spec,
        z: None,
    };
    Ok(Outcome::pass(serialize_structure(&st)))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { file } => cmd_check(cli, file),
        Command::Extend { file, ext } => cmd_extend(cli, file, ext),
        Command::Lift {
            source,
            target,
            hom,
            ext,
        } => cmd_lift(cli, source, target, hom, ext),
        Command::Verify {
            file,
            against,
            budget,
            ext,
        } => cmd_verify(cli, file, against.as_deref(), *budget, ext),
        Command::ExportDot { file, extend, ext } => cmd_export_dot(cli, file, *extend, ext),
        Command::Gen {
            kind,
            n,
            seed,
            preorder,
            ideal,
            name,
        } => cmd_gen(
            *kind,
            *n,
            *seed,
            preorder.as_deref(),
            ideal,
            name.as_deref(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_braces() {
        assert_eq!(split_top("{p,q}->a, {}->b"), vec!["{p,q}->a", "{}->b"]);
    }

    #[test]
    fn hom_must_be_total() {
        let s = SpecSemilattice::discrete(specsemi::JoinSemilattice::chain(2));
        assert_eq!(parse_hom(&s, &s, "0->1,1->1").unwrap(), vec![1, 1]);
        assert!(parse_hom(&s, &s, "0->1").is_err());
        assert!(parse_hom(&s, &s, "0->1,0->0,1->1").is_err());
    }
}
