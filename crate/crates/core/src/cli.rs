//! Command-line front end: argument parsing, dispatch, table and JSON reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{element_fusion, subgroup_fusion};
use crate::graph::{Amenability, ValidatedGraph};
use crate::input::{self, LetterSpec, Loaded};
use crate::invariants::{
    betti_report, describe_subgroup, euler_cmb_decomposition, fcal, kclass_general, kclass_p1, l2_betti1,
    schreier_rank, BettiReport, FormalKClass,
};
use crate::oracle::{verify_fusion, DEPTH_ENV};
use crate::rational::{format as fmt_q, Rational};
use crate::ring::GroupRingElement;
use crate::words::{Letter, NormalForm, WordEngine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_AMENABLE: i32 = 3;
pub const EXIT_ORACLE_FAIL: i32 = 4;
pub const EXIT_UNDECIDED: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "kazhdan",
    version,
    about = "Exact invariants of virtually free groups given as graphs of finite groups",
    long_about = "Reads a graph of finite groups from a JSON file and prints exact invariants: \
the Euler characteristic, the K-class of the first higher Kazhdan projection, delocalised \
l2-Betti numbers and related quantities. Rationals are printed as p/q.\n\n\
Exit codes: 0 success, 2 invalid input, 3 amenable input refused, 4 oracle FAIL, \
5 undecided trace membership."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Input file (JSON graph of groups).
    file: PathBuf,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct Force {
    /// Compute even when chi(G) >= 0, where the projection does not exist.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the input and print a summary.
    #[command(long_about = "Parses and validates the input: group axioms, homomorphism law and \
injectivity of every edge map, references and connectivity. Errors carry the offending \
position or object. Exit code 2 on any error.")]
    Validate(Common),
    /// Euler characteristic chi(G) = sum 1/|G_v| - sum 1/|G_e|.
    Euler(Common),
    /// First l2-Betti number beta_1(G) = -chi(G).
    #[command(long_about = "Prints the first l2-Betti number, the canonical trace of the class of \
p_1. Refused with exit code 3 when chi(G) >= 0 unless --force is given.")]
    Betti {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        force: Force,
    },
    /// Delocalised l2-Betti numbers of every torsion conjugacy class.
    #[command(long_about = "Prints, for each conjugacy class of torsion elements, the delocalised \
trace of the class of p_1 and whether it lies in F_G. Classes of infinite-order elements get 0.\n\n\
--local-attribution splits each class value over the vertex-local conjugacy classes it \
contains. Group-ring elements listed under \"elements\" in the input are traced too; an \
element that cannot be conjugated into a vertex group within --depth gives exit code 5.")]
    Delocalised {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        force: Force,
        /// Show the per-vertex-class breakdown of each value.
        #[arg(long)]
        local_attribution: bool,
        /// Reduction steps allowed when classifying input elements.
        #[arg(long, env = DEPTH_ENV, default_value_t = crate::oracle::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// K-class of p_n as a signed sum of averaging projections.
    #[command(long_about = "Without --degree prints [p_1] = sum_e [rho_e] - sum_v [rho_v] for the \
Bass-Serre tree. With --degree n prints (-1)^n sum (-1)^dim [rho_stab] over the orbits given \
in the input (or the Bass-Serre orbits). Degree 1 is refused for chi(G) >= 0 unless --force.")]
    Kclass {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        force: Force,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Conjugacy classes of torsion elements.
    Classes(Common),
    /// Euler characteristic decomposition over stabilizer conjugacy classes.
    #[command(long_about = "Groups the orbits (input \"orbits\" or the Bass-Serre orbits) by the \
conjugacy class of their stabilizer and prints chi(X,H) = sum (-1)^dim per class, with the \
induced K-class sum chi(X,H) [rho_H].")]
    Eulercmb(Common),
    /// Rank of a free subgroup of index j: r = j beta_1 + 1.
    Schreier {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        force: Force,
        /// Index of the free subgroup.
        #[arg(short = 'j', long = "index")]
        index: u64,
    },
    /// Generator of F_G, the subgroup of Q generated by 1/|F| over finite F.
    Fcal(Common),
    /// Check conjugacy classes against a brute-force conjugator search.
    #[command(long_about = "For one-edge graphs: searches all normal forms of syllable length at \
most --depth for conjugators. Every fused pair must be certified by a witness and no pair from \
different classes may have one. Prints PASS/FAIL per class with witnesses. Exit code 4 on FAIL. \
A missing witness means none within the depth, not a proof of non-conjugacy.")]
    Verify {
        #[command(flatten)]
        common: Common,
        /// Maximal syllable length of conjugators.
        #[arg(long, env = DEPTH_ENV, default_value_t = crate::oracle::DEFAULT_DEPTH)]
        depth: usize,
    },
}

/// Machine-readable output of every command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Validate {
        name: String,
        vertices: usize,
        edges: usize,
        #[serde(with = "crate::rational::as_string")]
        euler_characteristic: Rational,
        amenability: Amenability,
    },
    Euler {
        #[serde(with = "crate::rational::as_string")]
        euler_characteristic: Rational,
        amenability: Amenability,
    },
    Betti {
        #[serde(with = "crate::rational::as_string")]
        beta1: Rational,
        amenability: Amenability,
        forced: bool,
    },
    Delocalised {
        table: BettiReport,
        elements: Vec<ElementTrace>,
    },
    Kclass {
        degree: usize,
        forced: bool,
        terms: Vec<TermRow>,
    },
    Classes {
        classes: Vec<ClassRow>,
    },
    Eulercmb {
        classes: Vec<EulerRow>,
        induced: Vec<TermRow>,
    },
    Schreier {
        index: u64,
        #[serde(with = "crate::rational::as_string")]
        rank: Rational,
        integral: bool,
        forced: bool,
    },
    Fcal {
        #[serde(with = "crate::rational::as_string")]
        generator: Rational,
    },
    Verify {
        depth: usize,
        passed: bool,
        fused_pairs: usize,
        certified: usize,
        unfused_pairs: usize,
        classes: Vec<VerifyClass>,
        spurious: Vec<VerifyPair>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRow {
    pub sign: i8,
    pub vertex: String,
    pub members: Vec<String>,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub id: usize,
    pub representative: String,
    pub element_order: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerRow {
    pub subgroup: String,
    pub order: usize,
    pub orbit_stabilizers: Vec<String>,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValue {
    pub class: String,
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTrace {
    pub name: String,
    /// Non-zero delocalised traces only.
    pub by_class: Vec<ClassValue>,
    #[serde(with = "crate::rational::as_string")]
    pub infinite_order: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPair {
    pub source: String,
    pub target: String,
    /// Witness `w` with `w source w^-1 = target`, in letter syntax.
    pub witness: Option<String>,
    pub witness_word: Option<Vec<LetterSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyClass {
    pub class: String,
    pub passed: bool,
    pub pairs: Vec<VerifyPair>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_INVALID };
        }
    };
    let (common, forced) = cli.command.common_and_force();
    let loaded = match input::load_file(&common.file) {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    if forced && loaded.graph.amenability_gate() == Amenability::AmenableOrFinite {
        let _ = writeln!(
            err,
            "WARNING: --force: chi(G) = {} >= 0, so G is amenable or finite and the Kazhdan projection \
             does not exist; the numbers below are formal",
            fmt_q(&loaded.graph.euler_characteristic())
        );
    }
    match execute(&cli.command, &loaded) {
        Ok(report) => {
            let text = if common.json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                render(&report, &loaded.graph, &cli.command)
            };
            let _ = out.write_all(text.as_bytes());
            match report {
                Report::Verify { passed: false, .. } => EXIT_ORACLE_FAIL,
                _ => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Amenable { .. } => EXIT_AMENABLE,
        Error::Undecided(_) => EXIT_UNDECIDED,
        _ => EXIT_INVALID,
    }
}

impl Command {
    fn common_and_force(&self) -> (&Common, bool) {
        match self {
            Command::Validate(c) | Command::Euler(c) | Command::Classes(c) | Command::Eulercmb(c) | Command::Fcal(c) => {
                (c, false)
            }
            Command::Betti { common, force }
            | Command::Delocalised { common, force, .. }
            | Command::Kclass { common, force, .. }
            | Command::Schreier { common, force, .. } => (common, force.force),
            Command::Verify { common, .. } => (common, false),
        }
    }
}

fn gate(graph: &ValidatedGraph, forced: bool) -> Result<()> {
    if graph.amenability_gate() == Amenability::AmenableOrFinite && !forced {
        return Err(Error::Amenable {
            chi: fmt_q(&graph.euler_characteristic()),
        });
    }
    Ok(())
}

fn term_rows(graph: &ValidatedGraph, k: &FormalKClass) -> Vec<TermRow> {
    k.terms()
        .iter()
        .map(|t| {
            let group = graph.vertex_group(t.vertex);
            TermRow {
                sign: t.sign,
                vertex: graph.vertices()[t.vertex].id.clone(),
                members: t.subgroup.members().iter().map(|&x| group.label(x)).collect(),
                order: t.subgroup.order(),
            }
        })
        .collect()
}

fn letters_spec(graph: &ValidatedGraph, letters: &[Letter]) -> Vec<LetterSpec> {
    letters
        .iter()
        .map(|l| match *l {
            Letter::Vertex { vertex, element } => LetterSpec::Vertex {
                v: graph.vertices()[vertex].id.clone(),
                e: element,
            },
            Letter::Stable(t) => LetterSpec::Stable { t },
        })
        .collect()
}

fn execute(command: &Command, loaded: &Loaded) -> Result<Report> {
    let graph = &loaded.graph;
    Ok(match command {
        Command::Validate(_) => Report::Validate {
            name: graph.name().to_string(),
            vertices: graph.vertices().len(),
            edges: graph.edges().len(),
            euler_characteristic: graph.euler_characteristic(),
            amenability: graph.amenability_gate(),
        },
        Command::Euler(_) => Report::Euler {
            euler_characteristic: graph.euler_characteristic(),
            amenability: graph.amenability_gate(),
        },
        Command::Betti { force, .. } => {
            gate(graph, force.force)?;
            let b = l2_betti1(graph);
            Report::Betti {
                beta1: b.value,
                amenability: b.amenability,
                forced: force.force,
            }
        }
        Command::Delocalised { force, depth, .. } => {
            let kclass = kclass_p1(graph, force.force)?;
            let table = element_fusion(graph);
            let report = betti_report(graph, &kclass, &table, &fcal(graph)?, force.force);
            let mut elements = Vec::new();
            if !loaded.document.elements.is_empty() {
                let engine = Arc::new(WordEngine::new(graph)?);
                for (name, x) in loaded.elements(&engine)? {
                    elements.push(trace_element(graph, &table, &name, &x, *depth)?);
                }
            }
            Report::Delocalised {
                table: report,
                elements,
            }
        }
        Command::Kclass { force, degree, .. } => {
            let degree_used = degree.unwrap_or(1);
            let k = match degree {
                None => kclass_p1(graph, force.force)?,
                Some(n) => {
                    if *n == 1 {
                        gate(graph, force.force)?;
                    }
                    kclass_general(&loaded.complex(), *n)
                }
            };
            // [rho_H] only depends on the conjugacy class of H
            let keys: Vec<_> = k.terms().iter().map(|t| (t.vertex, t.subgroup.clone())).collect();
            let k = k.modulo_conjugacy(&subgroup_fusion(graph, &keys)?)?;
            Report::Kclass {
                degree: degree_used,
                forced: force.force,
                terms: term_rows(graph, &k),
            }
        }
        Command::Classes(_) => {
            let table = element_fusion(graph);
            Report::Classes {
                classes: table
                    .classes()
                    .iter()
                    .map(|c| ClassRow {
                        id: c.id,
                        representative: graph.pair_label(c.representative),
                        element_order: c.element_order,
                        members: c.members.iter().map(|&p| graph.pair_label(p)).collect(),
                    })
                    .collect(),
            }
        }
        Command::Eulercmb(_) => {
            let d = euler_cmb_decomposition(graph, &loaded.complex())?;
            Report::Eulercmb {
                classes: d
                    .entries
                    .iter()
                    .map(|e| EulerRow {
                        subgroup: describe_subgroup(graph, e.class.canonical.0, &e.class.canonical.1),
                        order: e.class.order,
                        orbit_stabilizers: e.class.members.iter().map(|(v, h)| describe_subgroup(graph, *v, h)).collect(),
                        chi: e.chi,
                    })
                    .collect(),
                induced: term_rows(graph, &d.induced_kclass()),
            }
        }
        Command::Schreier { force, index, .. } => {
            gate(graph, force.force)?;
            if *index == 0 {
                return Err(Error::Input("index must be positive".into()));
            }
            let r = schreier_rank(graph, *index);
            Report::Schreier {
                index: r.index,
                rank: r.rank,
                integral: r.integral,
                forced: force.force,
            }
        }
        Command::Fcal(_) => Report::Fcal {
            generator: fcal(graph)?.generator,
        },
        Command::Verify { depth, .. } => {
            let table = element_fusion(graph);
            let v = verify_fusion(graph, &table, *depth)?;
            let engine = WordEngine::new(graph)?;
            let pair = |p: &crate::oracle::PairVerdict| VerifyPair {
                source: graph.pair_label(p.source),
                target: graph.pair_label(p.target),
                witness: p.witness.as_ref().map(|w| engine.format(w)),
                witness_word: p.witness.as_ref().map(|w| letters_spec(graph, &engine.letters(w))),
            };
            Report::Verify {
                depth: v.depth,
                passed: v.passed,
                fused_pairs: v.fused_pairs,
                certified: v.certified,
                unfused_pairs: v.unfused_pairs,
                classes: v
                    .classes
                    .iter()
                    .map(|c| VerifyClass {
                        class: graph.pair_label(table.classes()[c.class_id].representative),
                        passed: c.passed,
                        pairs: c.pairs.iter().map(pair).collect(),
                    })
                    .collect(),
                spurious: v.spurious.iter().map(pair).collect(),
            }
        }
    })
}

fn trace_element(
    graph: &ValidatedGraph,
    table: &crate::fusion::TorsionClassTable,
    name: &str,
    x: &GroupRingElement,
    depth: usize,
) -> Result<ElementTrace> {
    let profile = x.trace_profile(table, depth).map_err(|e| match e {
        Error::Undecided(m) => Error::Undecided(format!("element \"{name}\": {m}")),
        other => other,
    })?;
    Ok(ElementTrace {
        name: name.to_string(),
        by_class: profile
            .by_class
            .iter()
            .enumerate()
            .filter(|(_, q)| **q != crate::rational::zero())
            .map(|(c, q)| ClassValue {
                class: graph.pair_label(table.classes()[c].representative),
                value: q.clone(),
            })
            .collect(),
        infinite_order: profile.infinite_order,
    })
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  ", w = *w));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

fn format_terms(rows: &[TermRow]) -> String {
    if rows.is_empty() {
        return "0".into();
    }
    rows.iter()
        .map(|t| {
            format!(
                "{} [rho {}:{{{}}}]",
                if t.sign > 0 { "+" } else { "-" },
                t.vertex,
                t.members.join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn render(report: &Report, graph: &ValidatedGraph, command: &Command) -> String {
    let local = matches!(command, Command::Delocalised { local_attribution: true, .. });
    match report {
        Report::Validate {
            name,
            vertices,
            edges,
            euler_characteristic,
            amenability,
        } => format!(
            "valid: {name}\nvertices: {vertices}\nedges: {edges}\nchi: {}\namenability: {amenability}\n",
            fmt_q(euler_characteristic)
        ),
        Report::Euler {
            euler_characteristic, ..
        } => format!("{}\n", fmt_q(euler_characteristic)),
        Report::Betti { beta1, .. } => format!("{}\n", fmt_q(beta1)),
        Report::Delocalised { table: t, elements } => {
            let mut out = format!(
                "delocalised l2-Betti numbers of p_1 for {}\nF_G = ({})Z\n",
                t.group,
                fmt_q(&t.fg_generator)
            );
            let mut rows = Vec::new();
            for c in &t.classes {
                rows.push(vec![
                    c.representative.clone(),
                    c.element_order.to_string(),
                    format!("{{{}}}", c.members.join(", ")),
                    fmt_q(&c.beta),
                    if c.in_fg { "yes" } else { "no" }.to_string(),
                ]);
                if local {
                    for a in &c.attribution {
                        rows.push(vec![
                            String::new(),
                            String::new(),
                            format!("  {}:{{{}}}", a.vertex, a.local_class.join(", ")),
                            fmt_q(&a.value),
                            String::new(),
                        ]);
                    }
                }
            }
            out.push_str(&table(&["class", "order", "members", "beta", "in F_G"], &rows));
            out.push_str(&format!("sum: {}\n", fmt_q(&t.sum())));
            out.push_str("classes of infinite-order elements: 0\n");
            for e in elements {
                out.push_str(&format!("element {}:", e.name));
                for cv in &e.by_class {
                    out.push_str(&format!(" {} -> {};", cv.class, fmt_q(&cv.value)));
                }
                out.push_str(&format!(" infinite order -> {}\n", fmt_q(&e.infinite_order)));
            }
            out
        }
        Report::Kclass { degree, terms, .. } => format!("[p_{degree}] = {}\n", format_terms(terms)),
        Report::Classes { classes } => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.representative.clone(),
                        c.element_order.to_string(),
                        format!("{{{}}}", c.members.join(", ")),
                    ]
                })
                .collect();
            table(&["id", "representative", "order", "members"], &rows)
        }
        Report::Eulercmb { classes, induced } => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| vec![c.subgroup.clone(), c.order.to_string(), c.chi.to_string()])
                .collect();
            table(&["class", "order", "chi"], &rows) + &format!("induced: {}\n", format_terms(induced))
        }
        Report::Schreier {
            index, rank, integral, ..
        } => {
            let mut s = format!("r = {} (j = {index})\n", fmt_q(rank));
            if !integral {
                s.push_str("not an integer: no free subgroup of this index\n");
            }
            s
        }
        Report::Fcal { generator } => format!("F_G = ({})Z\n", fmt_q(generator)),
        Report::Verify {
            depth,
            passed,
            fused_pairs,
            certified,
            unfused_pairs,
            classes,
            spurious,
        } => {
            let mut out = format!("conjugator search up to syllable length {depth} on {}\n", graph.name());
            for c in classes {
                out.push_str(&format!("[{}] class {}\n", if c.passed { "PASS" } else { "FAIL" }, c.class));
                for p in &c.pairs {
                    match &p.witness {
                        Some(w) => out.push_str(&format!("  {} ~ {}  certified by {w}\n", p.source, p.target)),
                        None => out.push_str(&format!("  {} ~ {}  no witness within depth {depth}\n", p.source, p.target)),
                    }
                }
            }
            for p in spurious {
                out.push_str(&format!(
                    "[FAIL] {} and {} are in different classes but conjugate by {}\n",
                    p.source,
                    p.target,
                    p.witness.as_deref().unwrap_or("?")
                ));
            }
            out.push_str(&format!(
                "fused pairs certified: {certified}/{fused_pairs}; unfused pairs of equal order with a witness: {}/{unfused_pairs}\n",
                spurious.len()
            ));
            out.push_str(if *passed { "PASS\n" } else { "FAIL\n" });
            out
        }
    }
}

/// Witness words of a verification report, re-parsed into normal forms.
pub fn witness_form(engine: &WordEngine, graph: &ValidatedGraph, word: &[LetterSpec]) -> Result<NormalForm> {
    let letters = word
        .iter()
        .map(|l| match l {
            LetterSpec::Vertex { v, e } => graph
                .vertex_index(v)
                .map(|i| Letter::vertex(i, *e))
                .ok_or_else(|| Error::InvalidWord(format!("unknown vertex \"{v}\""))),
            LetterSpec::Stable { t } => Ok(Letter::Stable(*t)),
        })
        .collect::<Result<Vec<_>>>()?;
    engine.normalize(&letters)
}
