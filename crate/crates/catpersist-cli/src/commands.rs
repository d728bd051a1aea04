//! The five subcommands. Each returns the text destined for standard
//! output (or the --output file); the exit-code policy lives in main.

use std::path::Path;

use catpersist::coloring::{
    colored_rank_check, group_colored_diagram, poset_color_functions, poset_colored_diagram,
    sum_of_functions, ColoredDiagram, ColoringError,
};
use catpersist::complex::{
    apply_group_average_filtration, build_poset_family, vietoris_rips, FilteredComplex,
};
use catpersist::distance::{bottleneck, multicolored_bottleneck, Endpoint, Matching};
use catpersist::field::FieldSpec;
use catpersist::persistence::{
    homology_persistence_function, reduce_to_intervals, PersistenceDiagram, PersistenceError,
};
use catpersist::value::{rat_from_f64, ExtValue, Rat};

use crate::io::{self, Dataset, DeathValue, DiagramFile, MetricKind, PointRecord};
use crate::CliError;

/// How to turn a dataset into a filtered complex.
pub struct ComplexParams {
    pub metric: MetricKind,
    pub max_dim: usize,
    pub max_scale: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ColorMode {
    /// Cokernels over the poset of label subsets.
    Poset,
    /// Isotypic components of a group of symmetries.
    Group,
}

fn resolve_scale(m: &catpersist::complex::MetricData, max_scale: Option<f64>) -> Result<Rat, CliError> {
    match max_scale {
        Some(s) => rat_from_f64(s)
            .ok_or_else(|| CliError::Malformed(format!("--max-scale {s} must be finite"))),
        None => Ok(io::max_distance(m)),
    }
}

fn build_complex(ds: &Dataset, params: &ComplexParams) -> Result<FilteredComplex, CliError> {
    let m = io::dataset_to_metric(ds)?;
    let scale = resolve_scale(&m, params.max_scale)?;
    vietoris_rips(&m, params.max_dim, &scale).map_err(|e| CliError::Malformed(e.to_string()))
}

fn persistence_error(e: PersistenceError) -> CliError {
    CliError::NonTame(e.to_string())
}

fn coloring_error(e: ColoringError) -> CliError {
    match e {
        ColoringError::IndivisibleRank { .. } => CliError::Invariant(e.to_string()),
        ColoringError::Persistence(pe) => persistence_error(pe),
        other => CliError::Malformed(other.to_string()),
    }
}

pub fn cmd_diagram(
    input: &Path,
    degree: usize,
    field: FieldSpec,
    params: &ComplexParams,
) -> Result<String, CliError> {
    let ds = io::read_dataset(input, params.metric)?;
    let d = if ds.len() == 0 {
        PersistenceDiagram::empty()
    } else {
        let c = build_complex(&ds, params)?;
        reduce_to_intervals(&c, degree, field).diagram()
    };
    Ok(io::render_diagram_file(&DiagramFile::new(field, degree, &d)))
}

pub struct ColoredArgs<'a> {
    pub mode: ColorMode,
    pub degree: usize,
    /// Field named on the command line, if any. Group mode rejects anything
    /// but the rationals here; the environment default is ignored there.
    pub explicit_field: Option<FieldSpec>,
    /// Field after flag > environment > default resolution (poset mode).
    pub resolved_field: FieldSpec,
    pub group_table: Option<&'a Path>,
    pub perms: Option<&'a Path>,
}

pub fn cmd_colored(
    input: &Path,
    args: &ColoredArgs,
    params: &ComplexParams,
) -> Result<String, CliError> {
    match args.mode {
        ColorMode::Poset => cmd_colored_poset(input, args, params),
        ColorMode::Group => cmd_colored_group(input, args, params),
    }
}

fn cmd_colored_poset(
    input: &Path,
    args: &ColoredArgs,
    params: &ComplexParams,
) -> Result<String, CliError> {
    let field = args.resolved_field;
    let ds = io::read_dataset(input, params.metric)?;
    if ds.len() == 0 {
        let file = DiagramFile::new(field, args.degree, &PersistenceDiagram::empty());
        return Ok(io::render_diagram_file(&file));
    }
    if ds.labels.is_none() {
        return Err(CliError::Malformed(format!(
            "{}: poset mode needs labels (a \"label\" column, or a label row on a matrix)",
            input.display()
        )));
    }
    let m = io::dataset_to_metric(&ds)?;
    let scale = resolve_scale(&m, params.max_scale)?;
    let fam = build_poset_family(&m, params.max_dim, &scale)
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let cd = poset_colored_diagram(&fam, args.degree, field).map_err(coloring_error)?;
    let functions = poset_color_functions(&fam, args.degree, field).map_err(coloring_error)?;
    let parts: Vec<_> = functions.into_iter().map(|(_, f)| f).collect();
    let totals = sum_of_functions(&parts);
    if !colored_rank_check(&cd, &totals) {
        return Err(CliError::Invariant(
            "colored ranks do not add up to the totals across the label poset".into(),
        ));
    }
    let file = DiagramFile::new(field, args.degree, &cd.merged());
    Ok(io::render_diagram_file(&file))
}

fn cmd_colored_group(
    input: &Path,
    args: &ColoredArgs,
    params: &ComplexParams,
) -> Result<String, CliError> {
    if let Some(f) = args.explicit_field {
        if f != FieldSpec::Rational {
            return Err(CliError::Malformed(
                "group mode computes over the rationals; drop --field or pass Q".into(),
            ));
        }
    }
    let table_path = args.group_table.ok_or_else(|| {
        CliError::Malformed("group mode needs --group-table <json file>".into())
    })?;
    let perms_path = args
        .perms
        .ok_or_else(|| CliError::Malformed("group mode needs --perms <text file>".into()))?;
    let table = io::read_character_table(table_path)?;
    let ds = io::read_dataset(input, params.metric)?;
    if ds.len() == 0 {
        let file = DiagramFile::new(FieldSpec::Rational, args.degree, &PersistenceDiagram::empty());
        return Ok(io::render_diagram_file(&file));
    }
    let action = io::read_permutations(perms_path)?;
    let c = build_complex(&ds, params)?;
    // Averaging over the orbit makes the filtration invariant; it is the
    // identity when the input already was.
    let c = apply_group_average_filtration(&c, &action)
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let cd = group_colored_diagram(&c, &action, &table, args.degree).map_err(coloring_error)?;
    let plain = homology_persistence_function(&c, args.degree, FieldSpec::Rational);
    if !colored_rank_check(&cd, &plain) {
        return Err(CliError::Invariant(
            "weighted isotypic ranks do not add up to the homology totals".into(),
        ));
    }
    let file = DiagramFile::new(FieldSpec::Rational, args.degree, &cd.merged());
    Ok(io::render_diagram_file(&file))
}

fn endpoint_text(e: &Endpoint) -> String {
    match e {
        Endpoint::Diagonal => "diagonal".into(),
        Endpoint::Point(p) => {
            let color = p
                .color
                .as_deref()
                .map(|c| format!(" [{c}]"))
                .unwrap_or_default();
            format!("({}, {}){color}", io::fmt_ext(&p.birth), io::fmt_ext(&p.death))
        }
    }
}

fn render_matching(m: &Matching) -> String {
    let mut lines: Vec<String> = m
        .pairs
        .iter()
        .map(|(a, b)| format!("{} -- {}", endpoint_text(a), endpoint_text(b)))
        .collect();
    lines.sort();
    let mut out = String::new();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn cmd_bottleneck(
    p1: &Path,
    p2: &Path,
    colored: bool,
    matching: bool,
) -> Result<String, CliError> {
    let d1 = io::read_diagram_file(p1)?.to_diagram()?;
    let d2 = io::read_diagram_file(p2)?.to_diagram()?;
    let (value, witness) = if colored {
        let c1 = ColoredDiagram::from_colored_points(&d1)
            .map_err(|e| CliError::Malformed(format!("{}: {e}", p1.display())))?;
        let c2 = ColoredDiagram::from_colored_points(&d2)
            .map_err(|e| CliError::Malformed(format!("{}: {e}", p2.display())))?;
        multicolored_bottleneck(&c1, &c2)
    } else {
        bottleneck(&d1, &d2)
    };
    let mut out = format!("{}\n", io::fmt_ext(&value));
    if matching {
        out.push_str(&render_matching(&witness));
    }
    Ok(out)
}

pub fn cmd_distance_matrix(dir: &Path, colored: bool, jobs: usize) -> Result<String, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", dir.display())))?;
    let mut names: Vec<String> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Malformed(format!("{}: {e}", dir.display())))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.ends_with(".json") {
            if name.contains(',') || name.contains('"') {
                return Err(CliError::Malformed(format!(
                    "{name}: file names with commas or quotes do not fit the CSV output"
                )));
            }
            names.push(name);
        }
    }
    names.sort();

    enum Parsed {
        Plain(PersistenceDiagram),
        Colored(ColoredDiagram),
    }
    let mut inputs = Vec::with_capacity(names.len());
    for name in &names {
        let d = io::read_diagram_file(&dir.join(name))?
            .to_diagram()
            .map_err(|e| CliError::Malformed(format!("{name}: {e}")))?;
        inputs.push(if colored {
            Parsed::Colored(
                ColoredDiagram::from_colored_points(&d)
                    .map_err(|e| CliError::Malformed(format!("{name}: {e}")))?,
            )
        } else {
            Parsed::Plain(d)
        });
    }

    let n = names.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let workers = jobs.max(1).min(pairs.len().max(1));
    let mut values = vec![ExtValue::int(0); pairs.len()];
    std::thread::scope(|scope| {
        let inputs = &inputs;
        let pairs = &pairs;
        let handles: Vec<_> = (0..workers)
            .map(|t| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut idx = t;
                    while idx < pairs.len() {
                        let (i, j) = pairs[idx];
                        let v = match (&inputs[i], &inputs[j]) {
                            (Parsed::Plain(a), Parsed::Plain(b)) => bottleneck(a, b).0,
                            (Parsed::Colored(a), Parsed::Colored(b)) => {
                                multicolored_bottleneck(a, b).0
                            }
                            _ => unreachable!("inputs are parsed uniformly"),
                        };
                        out.push((idx, v));
                        idx += workers;
                    }
                    out
                })
            })
            .collect();
        for h in handles {
            for (idx, v) in h.join().expect("distance worker panicked") {
                values[idx] = v;
            }
        }
    });

    let mut out = String::from("name");
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&names[i]);
        for j in 0..n {
            out.push(',');
            if i == j {
                out.push('0');
            } else {
                let key = (i.min(j), i.max(j));
                let idx = pairs.binary_search(&key).expect("every pair is listed");
                out.push_str(&io::fmt_ext(&values[idx]));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

fn death_sort_key(d: &DeathValue) -> (u8, f64) {
    match d {
        DeathValue::Finite(x) => (0, *x),
        DeathValue::Infinite => (1, 0.0),
    }
}

fn plot_value(x: f64) -> String {
    format!("{x}")
}

pub fn cmd_plotdata(path: &Path) -> Result<String, CliError> {
    let file = io::read_diagram_file(path)?;
    let mut records: Vec<PointRecord> = file.points.clone();
    records.sort_by(|a, b| {
        a.birth
            .total_cmp(&b.birth)
            .then_with(|| {
                let (ka, xa) = death_sort_key(&a.death);
                let (kb, xb) = death_sort_key(&b.death);
                ka.cmp(&kb).then(xa.total_cmp(&xb))
            })
            .then_with(|| a.color.cmp(&b.color))
    });

    let mut finite: Vec<f64> = Vec::new();
    for r in &records {
        finite.push(r.birth);
        if let DeathValue::Finite(d) = r.death {
            finite.push(d);
        }
    }
    let (lo, hi) = if finite.is_empty() {
        (0.0, 1.0)
    } else {
        let lo = finite.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["birth", "death", "multiplicity", "color"])
        .expect("csv rows serialize");
    for r in &records {
        let death = match r.death {
            DeathValue::Finite(x) => plot_value(x),
            DeathValue::Infinite => "inf".into(),
        };
        w.write_record([
            plot_value(r.birth),
            death,
            r.multiplicity.to_string(),
            r.color.clone().unwrap_or_default(),
        ])
        .expect("csv rows serialize");
    }
    w.write_record([plot_value(lo), plot_value(hi), "0".into(), "diagonal".into()])
        .expect("csv rows serialize");
    let bytes = w.into_inner().expect("csv buffer flushes");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
