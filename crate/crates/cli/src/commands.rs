use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::json;

use clutterlab::covering::{nu, tau};
use clutterlab::decompose::{decompose as run_decompose, verify_decomposition};
use clutterlab::format::{parse_auto, to_json, to_text, Document, LoadMode};
use clutterlab::lattice::{delta_r, smith_normal_form};
use clutterlab::polyhedron::{is_ideal, DEFAULT_VERTEX_LIMIT};
use clutterlab::properties::{
    check_rank_prop, classify_with_limit, find_2partition, is_mengerian_bounded, packing_report, MengerianVerdict,
    DEFAULT_MINOR_LIMIT,
};
use clutterlab::qpq::{generate_qpq_f, l_submatrix, FSpec, QpqDescriptor};
use clutterlab::suite::{render_detail, render_table, run_suite, Scale, SuiteConfig};
use clutterlab::{Clutter, VSet};

use crate::report::{digest, CommandReport, Outcome};
use crate::CheckKind;

type CmdResult = Result<Outcome, String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path, mode: LoadMode) -> Result<(Document, String), String> {
    let src = read(path)?;
    let doc = parse_auto(&src, mode).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((doc, digest(src.as_bytes())))
}

fn set_labels(c: &Clutter, s: VSet) -> String {
    c.universe().format_set(s)
}

fn parse_fspec(p: usize, q: usize, f: &str) -> Result<FSpec, String> {
    let Some(file) = f.strip_prefix("custom:") else {
        return f.parse().map_err(|e: clutterlab::Error| e.to_string());
    };
    let d = QpqDescriptor::new(p, q).map_err(|e| e.to_string())?;
    let u = d.universe();
    let (doc, _) = load(Path::new(file), LoadMode::Hypergraph)?;
    let src = &doc.clutter;
    src.edges()
        .iter()
        .map(|&e| u.set_of(&src.universe().labels_of(e)).map_err(|e| format!("{file}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(FSpec::Custom)
}

pub fn gen(p: usize, q: usize, f: &str, out: Option<PathBuf>) -> CmdResult {
    let spec = parse_fspec(p, q, f)?;
    let g = generate_qpq_f(p, q, &spec).map_err(|e| e.to_string())?;
    let stem = out.unwrap_or_else(|| {
        let tag: String = spec
            .to_string()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
            .collect();
        PathBuf::from(format!("q{p}{q}_{tag}"))
    });
    let doc = Document::from_qpq(&g);
    let clt = stem.with_extension("clt");
    let js = stem.with_extension("json");
    std::fs::write(&clt, to_text(&doc)).map_err(|e| format!("{}: {e}", clt.display()))?;
    std::fs::write(&js, to_json(&doc)).map_err(|e| format!("{}: {e}", js.display()))?;
    println!(
        "Q({p},{q}) F={}: {} vertices, {} edges -> {}, {}",
        g.fspec,
        g.clutter.n(),
        g.clutter.edge_count(),
        clt.display(),
        js.display()
    );
    Ok(Outcome::Pass)
}

struct Checked {
    outcome: Outcome,
    summary: Vec<String>,
    data: serde_json::Value,
}

fn verdict_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Inconclusive => "inconclusive",
        Outcome::Error => "error",
    }
}

pub fn check(
    which: CheckKind,
    path: &Path,
    wmax: u64,
    balanced_limit: usize,
    hypergraph: bool,
    json: Option<&Path>,
) -> CmdResult {
    let mode = if hypergraph {
        LoadMode::Hypergraph
    } else {
        LoadMode::Strict
    };
    let (doc, dig) = load(path, mode)?;
    let c = &doc.clutter;
    let start = Instant::now();
    let r = match which {
        CheckKind::Konig => check_konig(c),
        CheckKind::Pack => check_pack(c),
        CheckKind::Ideal => check_ideal(c),
        CheckKind::Mengerian => check_mengerian(c, wmax),
        CheckKind::Classify => check_classify(c, balanced_limit),
        CheckKind::TwoPart => check_two_part(c),
        CheckKind::DeltaR => check_delta_r(&doc),
    }
    .map_err(|e| e.to_string())?;
    let name = format!("check {}", clap::ValueEnum::to_possible_value(&which).expect("no skipped variants").get_name());
    let mut summary = vec![format!("{name}: {}", verdict_word(r.outcome))];
    summary.extend(r.summary.into_iter().map(|l| format!("  {l}")));
    let report = CommandReport {
        command: name,
        input: Some(path.display().to_string()),
        digest: Some(dig),
        outcome: r.outcome,
        summary,
        data: r.data,
        elapsed_secs: start.elapsed().as_secs_f64(),
    };
    report.emit(json)?;
    Ok(r.outcome)
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn check_konig(c: &Clutter) -> clutterlab::Result<Checked> {
    if c.has_empty_edge() {
        return Ok(Checked {
            outcome: Outcome::Pass,
            summary: vec!["∅ is an edge: König by convention".into()],
            data: json!({"konig": true, "empty_edge": true}),
        });
    }
    let t = tau(c)?;
    let v = nu(c);
    let (tv, nv) = (t.integer(), v.integer());
    Ok(Checked {
        outcome: pass_if(tv == nv),
        summary: vec![format!("τ = {tv}, ν = {nv}")],
        data: json!({"konig": tv == nv, "tau": t, "nu": v}),
    })
}

fn check_pack(c: &Clutter) -> clutterlab::Result<Checked> {
    let rep = packing_report(c, DEFAULT_MINOR_LIMIT, false)?;
    let mut summary = vec![format!("{} minors checked", rep.checked)];
    if let Some(f) = &rep.failing {
        summary.push(format!(
            "failing minor: {} (τ = {}, ν = {})",
            f.spec.describe(c.universe()),
            f.tau,
            f.nu
        ));
    }
    Ok(Checked {
        outcome: pass_if(rep.packs),
        summary,
        data: serde_json::to_value(&rep).expect("plain data"),
    })
}

fn check_ideal(c: &Clutter) -> clutterlab::Result<Checked> {
    let rep = is_ideal(c, DEFAULT_VERTEX_LIMIT)?;
    let mut summary = vec![format!("{} vertices of Q(A)", rep.vertex_count)];
    if let Some(v) = &rep.fractional_vertex {
        summary.push(format!("fractional vertex {}", v.display()));
    }
    Ok(Checked {
        outcome: pass_if(rep.ideal),
        summary,
        data: json!({
            "ideal": rep.ideal,
            "vertex_count": rep.vertex_count,
            "fractional_vertex": rep.fractional_vertex.as_ref().map(|v| v.display()),
        }),
    })
}

fn check_mengerian(c: &Clutter, wmax: u64) -> clutterlab::Result<Checked> {
    let rep = is_mengerian_bounded(c, wmax)?;
    let line = match &rep.verdict {
        MengerianVerdict::PassBounded => {
            format!("pass-bounded: {} weight vectors in {{0..{wmax}}}^n, none without a witness edge", rep.checked)
        }
        MengerianVerdict::Fail { w, reason } => format!("fails at ω = {w:?}: {reason}"),
        MengerianVerdict::NotIdeal { fractional_vertex } => {
            format!("not ideal, fractional vertex ({})", fractional_vertex.join(", "))
        }
    };
    Ok(Checked {
        outcome: pass_if(rep.passed()),
        summary: vec![line],
        data: serde_json::to_value(&rep).expect("plain data"),
    })
}

fn check_classify(c: &Clutter, limit: usize) -> clutterlab::Result<Checked> {
    let cl = classify_with_limit(c, limit)?;
    let mut summary = vec![format!(
        "binary = {}, dyadic = {}, balanced = {}{}",
        cl.binary,
        cl.dyadic,
        cl.balanced,
        if cl.balanced_exhaustive || !cl.balanced {
            String::new()
        } else {
            format!(" (odd submatrices searched up to order {limit})")
        }
    )];
    if let Some([a, b, d]) = cl.binary_witness {
        let e = c.edges();
        summary.push(format!(
            "not binary: {} △ {} △ {} contains no edge",
            set_labels(c, e[a]),
            set_labels(c, e[b]),
            set_labels(c, e[d])
        ));
    }
    if let Some((k, t)) = &cl.dyadic_witness {
        summary.push(format!(
            "not dyadic: edge {} meets blocker member {} three or more times",
            set_labels(c, c.edges()[*k]),
            set_labels(c, VSet::from_indices(t.iter().copied()))
        ));
    }
    if let Some((rows, cols)) = &cl.balanced_witness {
        let vs: Vec<&str> = rows.iter().map(|&v| c.universe().name(v)).collect();
        let es: Vec<String> = cols.iter().map(|&k| set_labels(c, c.edges()[k])).collect();
        summary.push(format!(
            "not balanced: rows {{{}}} and edges {} form an odd cycle submatrix",
            vs.join(","),
            es.join(" ")
        ));
    }
    let outcome = if cl.balanced && !cl.balanced_exhaustive {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(Checked {
        outcome,
        summary,
        data: serde_json::to_value(&cl).expect("plain data"),
    })
}

fn check_two_part(c: &Clutter) -> clutterlab::Result<Checked> {
    let Some(part) = find_2partition(c) else {
        return Ok(Checked {
            outcome: Outcome::Fail,
            summary: vec!["no partition into pairs met once by every edge".into()],
            data: json!({"partition": null}),
        });
    };
    let rr = check_rank_prop(c, &part)?;
    let blocks: Vec<String> = part
        .blocks
        .iter()
        .map(|&(a, b)| format!("{{{},{}}}", c.universe().name(a), c.universe().name(b)))
        .collect();
    let mut summary = vec![
        format!("blocks {}", blocks.join(" ")),
        format!("rank A = {}, rank B = {}, d + 1 = {}", rr.rank_a, rr.rank_b, rr.d + 1),
    ];
    if let Some(m) = rr.maximal_rank {
        summary.push(format!("König with a cover of size d: rank A = d + 1 is {m}"));
    }
    Ok(Checked {
        outcome: Outcome::Pass,
        summary,
        data: json!({"partition": part.blocks, "rank": rr}),
    })
}

fn check_delta_r(doc: &Document) -> clutterlab::Result<Checked> {
    let c = &doc.clutter;
    let b = c.augmented_incidence();
    let dr = delta_r(&b)?;
    let snf = smith_normal_form(&b);
    let factors: Vec<String> = snf.factors.iter().map(|f| f.to_string()).collect();
    let mut summary = vec![
        format!("Δ_r = {dr} with r = rank B = {}", snf.rank()),
        format!("invariant factors {}", factors.join(" ")),
    ];
    let mut det_l = None;
    if let Ok(g) = doc.qpq() {
        if let Some(l) = l_submatrix(&g.descriptor, c) {
            let d = l.determinant();
            summary.push(format!("det L = {d}"));
            det_l = Some(d.to_string());
        }
    }
    Ok(Checked {
        outcome: pass_if(dr == 1.into()),
        summary,
        data: json!({"delta_r": dr.to_string(), "rank": snf.rank(), "factors": factors, "det_l": det_l}),
    })
}

fn parse_weights(c: &Clutter, inline: Option<&str>, file: Option<&Path>) -> Result<Vec<u64>, String> {
    let n = c.n();
    if let Some(s) = inline {
        let w = s
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| format!("bad weight `{x}`")))
            .collect::<Result<Vec<_>, _>>()?;
        if w.len() != n {
            return Err(format!("weight vector has length {}, expected {n}", w.len()));
        }
        return Ok(w);
    }
    let path = file.ok_or("one of --w or --w-file is required")?;
    let mut w = vec![0; n];
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (label, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected label=value", path.display(), i + 1))?;
        let v = c
            .universe()
            .index_of(label.trim())
            .ok_or_else(|| format!("{}:{}: unknown vertex `{}`", path.display(), i + 1, label.trim()))?;
        w[v] = value
            .trim()
            .parse()
            .map_err(|_| format!("{}:{}: bad weight `{}`", path.display(), i + 1, value.trim()))?;
    }
    Ok(w)
}

pub fn decompose(path: &Path, inline: Option<&str>, file: Option<&Path>, json: Option<&Path>) -> CmdResult {
    let (doc, dig) = load(path, LoadMode::Strict)?;
    let g = doc
        .qpq()
        .map_err(|e| format!("decompose needs a generated Q_pq^F* file: {e}"))?;
    let w = parse_weights(&g.clutter, inline, file)?;
    let start = Instant::now();
    let trace = run_decompose(&g, &w).map_err(|e| e.to_string())?;
    let m = trace.edge_sets(&g);
    let ok = verify_decomposition(&g, &w, &m);
    let mut summary = vec![format!("τ^ω = {}, {} steps", trace.tau, trace.steps.len())];
    if !trace.steps.is_empty() {
        summary.push(format!("{:>4}  {:<8}  {:<3}  {:<28}  ω before step", "step", "rule", "τ", "edge"));
    }
    for s in &trace.steps {
        summary.push(format!(
            "{:>4}  {:<8}  {:<3}  {:<28}  {:?}",
            s.iteration,
            s.rule.to_string(),
            s.tau,
            format!("{{{}}}", s.edge_labels.join(",")),
            s.w
        ));
    }
    summary.push(format!(
        "edges: [{}]",
        m.iter().map(|&e| set_labels(&g.clutter, e)).collect::<Vec<_>>().join(", ")
    ));
    summary.push(format!("verified: {ok}"));
    let outcome = pass_if(ok);
    let report = CommandReport {
        command: "decompose".into(),
        input: Some(path.display().to_string()),
        digest: Some(dig),
        outcome,
        summary,
        data: json!({"trace": trace, "verified": ok}),
        elapsed_secs: start.elapsed().as_secs_f64(),
    };
    report.emit(json)?;
    Ok(outcome)
}

pub fn verify_suite(scale: Scale, only: Option<String>, seed: u64, verbose: bool, json: Option<&Path>) -> CmdResult {
    let cfg = SuiteConfig { scale, seed, only };
    let start = Instant::now();
    let results = run_suite(&cfg);
    if results.is_empty() {
        return Err(format!(
            "no criterion matches; keys are {}",
            clutterlab::suite::criterion_keys().join(", ")
        ));
    }
    let mut summary: Vec<String> = render_table(&results).lines().map(str::to_string).collect();
    for r in &results {
        if verbose || !r.passed {
            summary.push(String::new());
            summary.extend(render_detail(r).lines().map(str::to_string));
        }
    }
    let outcome = pass_if(results.iter().all(|r| r.passed));
    let report = CommandReport {
        command: format!("verify-suite {scale}"),
        input: None,
        digest: None,
        outcome,
        summary,
        data: json!({"scale": scale, "seed": seed, "results": results}),
        elapsed_secs: start.elapsed().as_secs_f64(),
    };
    report.emit(json)?;
    Ok(outcome)
}
