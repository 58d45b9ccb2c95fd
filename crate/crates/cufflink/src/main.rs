use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};

use cufflink::bundle;
use cufflink::diagram::{parse, validate, Diagram, SpineDiagram};
use cufflink::homology::linking_table;
use cufflink::pipeline::{
    clear_arcs, run_dualize, run_theorem_main, surface_summaries, Mode, PlanChoices,
};
use cufflink::seifert::spine_surface_system;

/// Exit codes: 0 everything passed, 1 a check failed, 2 usage or I/O.
const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "cufflink", version, about = "Certified unknotting of handlebody spines")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Certify a null-homologous surgery link.
    Part1,
    /// Additionally require a completely disjoint surface system and
    /// certify every component's class separately.
    Part2,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check diagram files and report structural issues.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Check up to this many files in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Report the surface spanned by each loop of a spine.
    Surface { path: PathBuf },
    /// Print the pairwise linking numbers of a diagram's components.
    Linking { path: PathBuf },
    /// Unknot a spine and emit the certificate bundle.
    Unknot {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Part1)]
        mode: ModeArg,
        /// Loop traversal order as 1-based indices, e.g. `2,1`.
        #[arg(long)]
        order: Option<String>,
        /// Starting edge position on each loop, 1-based, e.g. `1,3`.
        #[arg(long)]
        basepoint: Option<String>,
        /// Write the bundle here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unknot and additionally record the dual disk boundary curves.
    Dualize {
        path: PathBuf,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate bundle from its own recorded input.
    Certify { path: PathBuf },
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    match cli.cmd {
        Cmd::Validate { paths, jobs } => cmd_validate(&paths, jobs),
        Cmd::Surface { path } => cmd_surface(&path),
        Cmd::Linking { path } => cmd_linking(&path),
        Cmd::Unknot {
            path,
            mode,
            order,
            basepoint,
            out,
        } => cmd_unknot(&path, mode, order.as_deref(), basepoint.as_deref(), out.as_deref()),
        Cmd::Dualize {
            path,
            order,
            basepoint,
            out,
        } => cmd_dualize(&path, order.as_deref(), basepoint.as_deref(), out.as_deref()),
        Cmd::Certify { path } => cmd_certify(&path),
    }
}

fn read(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        USAGE
    })
}

fn load_spine(path: &Path) -> Result<SpineDiagram, u8> {
    let text = read(path)?;
    match parse(&text) {
        Ok(Diagram::Spine(sp)) => Ok(sp),
        Ok(Diagram::Link(_)) => {
            eprintln!("{}: expected a spine file, found a link", path.display());
            Err(USAGE)
        }
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            Err(FAIL)
        }
    }
}

enum FileCheck {
    Io(String),
    Bad(Vec<String>),
    Good,
}

fn check_file(path: &Path) -> FileCheck {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return FileCheck::Io(e.to_string()),
    };
    let d = match parse(&text) {
        Ok(d) => d,
        Err(e) => return FileCheck::Bad(vec![e.to_string()]),
    };
    let report = validate(&d);
    if report.ok() {
        FileCheck::Good
    } else {
        FileCheck::Bad(report.issues.into_iter().map(|i| i.msg).collect())
    }
}

fn cmd_validate(paths: &[PathBuf], jobs: usize) -> u8 {
    let checks: Vec<Mutex<Option<FileCheck>>> = paths.iter().map(|_| Mutex::new(None)).collect();
    let workers = jobs.max(1).min(paths.len().max(1));
    if workers <= 1 {
        for (slot, path) in checks.iter().zip(paths) {
            *slot.lock().unwrap() = Some(check_file(path));
        }
    } else {
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= paths.len() {
                        break;
                    }
                    *checks[i].lock().unwrap() = Some(check_file(&paths[i]));
                });
            }
        });
    }

    let mut code = PASS;
    for (slot, path) in checks.iter().zip(paths) {
        match slot.lock().unwrap().take() {
            Some(FileCheck::Good) => println!("{}: ok", path.display()),
            Some(FileCheck::Bad(msgs)) => {
                code = code.max(FAIL);
                for m in msgs {
                    println!("{}: {m}", path.display());
                }
            }
            Some(FileCheck::Io(e)) => {
                code = USAGE;
                eprintln!("{}: {e}", path.display());
            }
            None => unreachable!("every slot is filled"),
        }
    }
    code
}

fn cmd_surface(path: &Path) -> u8 {
    let sp = match load_spine(path) {
        Ok(sp) => sp,
        Err(code) => return code,
    };
    let report = validate(&Diagram::Spine(sp.clone()));
    if !report.ok() {
        for i in report.issues {
            println!("{}: {}", path.display(), i.msg);
        }
        return FAIL;
    }
    let normal = match clear_arcs(&sp) {
        Ok((normal, _)) => normal,
        Err(e) => {
            eprintln!("{e}");
            return FAIL;
        }
    };
    let sys = match spine_surface_system(&normal) {
        Ok(sys) => sys,
        Err(e) => {
            eprintln!("{e}");
            return FAIL;
        }
    };
    for f in surface_summaries(&sys) {
        println!(
            "surface {}: disks={} bands={} chi={} genus={} boundary={}",
            f.looped + 1,
            f.disks,
            f.bands,
            f.chi,
            f.genus,
            f.boundary
        );
    }
    for (piece, loops) in &sys.shared {
        let ls: Vec<String> = loops.iter().map(|l| (l + 1).to_string()).collect();
        println!("shared piece {}: loops {}", piece + 1, ls.join(" "));
    }
    PASS
}

fn cmd_linking(path: &Path) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let d = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return FAIL;
        }
    };
    let report = validate(&d);
    if !report.ok() {
        for i in report.issues {
            println!("{}: {}", path.display(), i.msg);
        }
        return FAIL;
    }
    let link = match d {
        Diagram::Link(l) => l,
        Diagram::Spine(sp) => sp.loops_as_link(),
    };
    match linking_table(&link) {
        Ok(table) => {
            let n = table.0.len();
            for a in 0..n {
                for b in a + 1..n {
                    println!("linking {} {} = {}", a + 1, b + 1, table.0[a][b]);
                }
            }
            PASS
        }
        Err(e) => {
            eprintln!("{e}");
            FAIL
        }
    }
}

fn parse_index_list(flag: &str, value: &str) -> Result<Vec<usize>, u8> {
    value
        .split(',')
        .map(|t| t.trim().parse::<usize>().ok().and_then(|n| n.checked_sub(1)))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| {
            eprintln!("--{flag} must be a comma-separated list of 1-based indices");
            USAGE
        })
}

fn build_choices(
    sp: &SpineDiagram,
    order: Option<&str>,
    basepoint: Option<&str>,
) -> Result<PlanChoices, u8> {
    let mut choices = PlanChoices::default_for(sp.genus());
    if let Some(o) = order {
        choices.order = parse_index_list("order", o)?;
    }
    if let Some(b) = basepoint {
        choices.basepoints = parse_index_list("basepoint", b)?;
    }
    Ok(choices)
}

fn deliver(text: &str, out: Option<&Path>) -> Result<(), u8> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).map_err(|e| {
            eprintln!("{}: {e}", path.display());
            USAGE
        }),
    }
}

fn cmd_unknot(
    path: &Path,
    mode: ModeArg,
    order: Option<&str>,
    basepoint: Option<&str>,
    out: Option<&Path>,
) -> u8 {
    let sp = match load_spine(path) {
        Ok(sp) => sp,
        Err(code) => return code,
    };
    let choices = match build_choices(&sp, order, basepoint) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let mode = match mode {
        ModeArg::Part1 => Mode::Part1,
        ModeArg::Part2 => Mode::Part2,
    };
    let b = match run_theorem_main(&sp, mode, &choices) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("{e}");
            return FAIL;
        }
    };
    if let Err(code) = deliver(&bundle::emit(&b), out) {
        return code;
    }
    if b.passes() {
        PASS
    } else {
        FAIL
    }
}

fn cmd_dualize(
    path: &Path,
    order: Option<&str>,
    basepoint: Option<&str>,
    out: Option<&Path>,
) -> u8 {
    let sp = match load_spine(path) {
        Ok(sp) => sp,
        Err(code) => return code,
    };
    let choices = match build_choices(&sp, order, basepoint) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let b = match run_dualize(&sp, &choices) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("{e}");
            return FAIL;
        }
    };
    if let Err(code) = deliver(&bundle::emit(&b), out) {
        return code;
    }
    if b.passes() {
        PASS
    } else {
        FAIL
    }
}

fn cmd_certify(path: &Path) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match bundle::certify(&text) {
        Ok(report) if report.ok() => {
            println!("ok");
            PASS
        }
        Ok(report) => {
            for p in report.problems {
                println!("problem: {p}");
            }
            FAIL
        }
        Err(e) => {
            eprintln!("{e}");
            FAIL
        }
    }
}
