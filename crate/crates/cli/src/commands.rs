use std::fmt::Write as _;

use serde_json::{json, Value};

use cluster_lab::compat::{
    check_duality, check_embedding, check_symmetry_ratio, compatibility_degree,
    d_compatibility_degree, CheckReport,
};
use cluster_lab::explorer::{explore, Bounds};
use cluster_lab::matrix::IntMat;
use cluster_lab::pattern::{evolve, EvolveOptions, Seed};
use cluster_lab::rank2::{closed_form_f, rank2_exchangeability, rank2_matrix, vertex_word};
use cluster_lab::rootsys::CartanData;
use cluster_lab::verify::{self, to_junit};

use crate::input;
use crate::{
    ClassicalArgs, Command, CompatArgs, ExploreArgs, Format, MutateArgs, Outcome, Rank2Args,
    VectorsArgs, VerifyArgs, VerifyFormat,
};

type Res = Result<Outcome, String>;

pub fn run(cmd: &Command) -> Res {
    match cmd {
        Command::Mutate(a) => mutate(a),
        Command::Vectors(a) => vectors(a),
        Command::Compat(a) => compat(a),
        Command::Classical(a) => classical(a),
        Command::Explore(a) => explore_cmd(a),
        Command::Rank2(a) => rank2(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn to_json(v: &impl serde::Serialize) -> Result<String, String> {
    // Going through Value sorts object keys, which keeps output stable.
    let v = serde_json::to_value(v).map_err(err)?;
    serde_json::to_string_pretty(&v).map_err(err)
}

fn emit(format: Format, value: Value, table: impl FnOnce() -> String, ok: bool) -> Res {
    let text = match format {
        Format::Json => to_json(&value)?,
        Format::Table => table(),
    };
    Ok(Outcome { text, ok })
}

fn matrix_block(name: &str, m: &IntMat) -> String {
    let mut s = format!("{name}:\n");
    for line in m.to_string().lines() {
        let _ = writeln!(s, "  {line}");
    }
    s
}

fn mutate(a: &MutateArgs) -> Res {
    let b = input::exchange_matrix(&a.matrix)?;
    let w = input::word(&a.word, b.rank())?;
    let spec = input::coefficients(&a.coefficients)?;
    let seed = Seed::initial(&b, &spec)
        .and_then(|s| s.mutate_along(w.letters()))
        .map_err(err)?;
    let names = spec.generator_names(b.rank());
    let n = b.rank();
    let x: Vec<String> = (0..n).map(|j| seed.display_x(j)).collect();
    let value = json!({
        "word": w,
        "B": seed.b(),
        "x": x,
        "x_terms": seed.x(),
        "y": seed.y(),
        "generators": names,
    });
    emit(
        a.format,
        value,
        || {
            let mut s = format!("word: [{w}]\n");
            s.push_str(&matrix_block("B", seed.b().matrix()));
            for (j, xj) in x.iter().enumerate() {
                let _ = writeln!(s, "x{} = {xj}", j + 1);
            }
            for (j, yj) in seed.y().iter().enumerate() {
                let mono: Vec<String> = yj
                    .iter()
                    .zip(&names)
                    .filter(|(e, _)| **e != 0)
                    .map(|(e, g)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
                    .collect();
                let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
                let _ = writeln!(s, "y{} = {mono}", j + 1);
            }
            s
        },
        true,
    )
}

const SHOW_KEYS: &[&str] = &["c", "g", "d", "f", "F", "H", "fpolys"];

fn vectors(a: &VectorsArgs) -> Res {
    let b = input::exchange_matrix(&a.matrix)?;
    let w = input::word(&a.word, b.rank())?;
    let mut show: Vec<&str> = Vec::new();
    for key in a.show.split(',').map(str::trim).filter(|k| !k.is_empty()) {
        if !SHOW_KEYS.contains(&key) {
            return Err(format!("--show: unknown item {key:?}; expected some of {}", SHOW_KEYS.join(",")));
        }
        // f and F both name the F-matrix
        let key = if key == "f" { "F" } else { key };
        if !show.contains(&key) {
            show.push(key);
        }
    }
    let needs_polys = show.iter().any(|k| *k == "H" || *k == "fpolys");
    let opts = if needs_polys {
        EvolveOptions::default()
    } else {
        EvolveOptions::matrices_only()
    };
    let s = evolve(&b, w.letters(), opts).map_err(err)?;
    let h = if show.contains(&"H") {
        Some(s.h_matrix().map_err(err)?)
    } else {
        None
    };
    let mut value = serde_json::Map::new();
    value.insert("word".into(), json!(w));
    value.insert("B".into(), json!(s.b()));
    let mut table = format!("word: [{w}]\n");
    table.push_str(&matrix_block("B", s.b().matrix()));
    for key in &show {
        match *key {
            "c" | "g" | "d" | "F" => {
                let (name, m) = match *key {
                    "c" => ("C", s.c()),
                    "g" => ("G", s.g()),
                    "d" => ("D", s.d()),
                    _ => ("F", s.f()),
                };
                value.insert(name.into(), json!(m));
                table.push_str(&matrix_block(name, m));
            }
            "H" => {
                let h = h.as_ref().expect("computed above");
                value.insert("H".into(), json!(h));
                table.push_str(&matrix_block("H", h));
            }
            _ => {
                let fp = s.fpolys_required().map_err(err)?;
                value.insert("fpolys".into(), json!(fp));
                table.push_str("F-polynomials:\n");
                for (j, p) in fp.iter().enumerate() {
                    let _ = writeln!(table, "  F{} = {p}", j + 1);
                }
            }
        }
    }
    emit(a.format, Value::Object(value), || table, true)
}

fn report_line(r: &CheckReport) -> String {
    format!(
        "{}: {} ({} vs {}; {})",
        r.property,
        if r.passed { "pass" } else { "FAIL" },
        r.lhs,
        r.rhs,
        r.detail
    )
}

fn compat(a: &CompatArgs) -> Res {
    let b = input::exchange_matrix(&a.matrix)?;
    let n = b.rank();
    let x = input::variable(&a.a, "--a", n)?;
    let y = input::variable(&a.b, "--b", n)?;
    let degree = compatibility_degree(&b, &x, &y).map_err(err)?;
    let reverse = compatibility_degree(&b, &y, &x).map_err(err)?;
    let mut value = json!({"a": x, "b": y, "degree": degree, "reverse_degree": reverse});
    let mut table = format!("({x} || {y}) = {degree}\n({y} || {x}) = {reverse}\n");
    if a.d {
        let d = d_compatibility_degree(&b, &x, &y).map_err(err)?;
        let rd = d_compatibility_degree(&b, &y, &x).map_err(err)?;
        value["d_degree"] = json!(d);
        value["reverse_d_degree"] = json!(rd);
        let _ = writeln!(table, "({x} || {y})_d = {d}\n({y} || {x})_d = {rd}");
    }
    let mut checks: Vec<CheckReport> = Vec::new();
    if a.dual {
        checks.extend(check_duality(&b, &x, &y).map_err(err)?);
    }
    if a.sym {
        checks.push(check_symmetry_ratio(&b, &x, &y).map_err(err)?);
    }
    if let Some(e) = &a.embed {
        let set = input::index_set(e, "--embed", n)?;
        checks.push(check_embedding(&b, &set, &x, &y).map_err(err)?);
    }
    let ok = checks.iter().all(|c| c.passed);
    if !checks.is_empty() {
        for c in &checks {
            let _ = writeln!(table, "{}", report_line(c));
        }
        value["checks"] = json!(checks);
    }
    emit(a.format, value, || table, ok)
}

fn classical(a: &ClassicalArgs) -> Res {
    let c = input::int_matrix(&a.cartan, "--cartan")?;
    let data = CartanData::new(c).map_err(|e| format!("--cartan: {e}"))?;
    let alpha = input::vector(&a.alpha, "--alpha")?;
    let beta = input::vector(&a.beta, "--beta")?;
    let degree = data.classical_degree(&alpha, &beta).map_err(err)?;
    let mut value = json!({"alpha": alpha, "beta": beta, "degree": degree});
    let mut table = format!("({alpha:?} || {beta:?})_cl = {degree}\n");
    let mut ok = true;
    if a.check {
        let b = data.exchange_matrix().map_err(err)?;
        let g = explore(&b, Bounds::default()).map_err(err)?;
        let ra = data.root_to_variable(&alpha, &g).map_err(err)?;
        let rb = data.root_to_variable(&beta, &g).map_err(err)?;
        let f = compatibility_degree(&b, &ra, &rb).map_err(err)?;
        ok = f == degree;
        value["f_degree"] = json!(f);
        value["a"] = json!(ra);
        value["b"] = json!(rb);
        value["agrees"] = json!(ok);
        let _ = writeln!(
            table,
            "({ra} || {rb}) = {f} in B(C): {}",
            if ok { "agrees" } else { "DISAGREES" }
        );
    }
    emit(a.format, value, || table, ok)
}

fn explore_cmd(a: &ExploreArgs) -> Res {
    let b = input::exchange_matrix(&a.matrix)?;
    let g = explore(
        &b,
        Bounds {
            max_seeds: a.max_seeds,
            max_depth: a.max_depth,
        },
    )
    .map_err(err)?;
    if let Some(path) = &a.graphviz {
        std::fs::write(path, g.to_dot()).map_err(|e| format!("--graphviz: {e}"))?;
    }
    let complex = if a.complex {
        Some(g.cluster_complex().map_err(|e| format!("--complex: {e}"))?)
    } else {
        None
    };
    let mut value = json!({
        "status": g.status(),
        "seeds": g.nodes(),
        "edges": g.edges(),
        "variables": g.variables(),
    });
    if let Some(c) = &complex {
        value["complex"] = json!(c);
    }
    emit(
        a.format,
        value,
        || {
            let mut s = format!(
                "status: {:?}\nseeds: {}\nvariables: {}\nedges: {}\n",
                g.status(),
                g.nodes().len(),
                g.variables().len(),
                g.edges().len()
            );
            s.push_str("variables (id, first seen at, g, d):\n");
            for (i, v) in g.variables().iter().enumerate() {
                let _ = writeln!(s, "  v{i}  {}  g={:?}  d={:?}", v.reference, v.key.g, v.d);
            }
            if let Some(c) = &complex {
                let _ = writeln!(s, "facets: {}", c.facets.len());
                for f in &c.facets {
                    let ids: Vec<String> = f.iter().map(|v| format!("v{v}")).collect();
                    let _ = writeln!(s, "  {{{}}}", ids.join(", "));
                }
            }
            s
        },
        true,
    )
}

fn rank2(a: &Rank2Args) -> Res {
    if a.n.is_none() && a.pair.is_none() {
        return Err("rank2: give --n, --pair, or both".into());
    }
    let m = rank2_matrix(a.b, a.c).map_err(err)?;
    let mut value = json!({"b": a.b, "c": a.c});
    let mut table = format!("B = [[0, {}], [{}, 0]]\n", a.b, -a.c);
    let mut ok = true;
    if let Some(n) = a.n {
        let word = cluster_lab::pattern::MutationWord::new(vertex_word(n));
        let closed = closed_form_f(a.b, a.c, n).map_err(err)?;
        value["n"] = json!(n);
        value["word"] = json!(word);
        value["F"] = json!(closed);
        let _ = writeln!(table, "t{n} = [{word}]");
        table.push_str(&matrix_block("F (closed form)", &closed));
        if a.check_recursion {
            let rec = evolve(&m, word.letters(), EvolveOptions::matrices_only()).map_err(err)?;
            let agrees = &closed == rec.f();
            ok &= agrees;
            value["recursion"] = json!(rec.f());
            value["agrees"] = json!(agrees);
            table.push_str(&matrix_block("F (recursion)", rec.f()));
            let _ = writeln!(table, "{}", if agrees { "agrees" } else { "DISAGREES" });
        }
    }
    if let Some(pair) = &a.pair {
        let x = input::variable(&pair[0], "--pair", 2)?;
        let y = input::variable(&pair[1], "--pair", 2)?;
        let verdict = rank2_exchangeability(a.b, a.c, &x, &y).map_err(err)?;
        let _ = writeln!(
            table,
            "({x}, {y}): degrees {:?}, {}",
            verdict.degrees(),
            if verdict.is_exchangeable() { "exchangeable" } else { "not exchangeable" }
        );
        value["exchangeability"] = json!(verdict);
    }
    emit(a.format, value, || table, ok)
}

fn verify_cmd(a: &VerifyArgs) -> Res {
    if a.list {
        let suites: Vec<Value> = verify::SUITES
            .iter()
            .map(|s| json!({"name": s.name, "description": s.description, "corpora": s.default_corpora}))
            .collect();
        let corpora: Vec<Value> = verify::builtin_corpora()
            .iter()
            .map(|c| json!({"name": c.name, "provenance": c.provenance, "cases": c.cases.len()}))
            .collect();
        let text = match a.format {
            VerifyFormat::Json => to_json(&json!({"suites": suites, "corpora": corpora}))?,
            _ => {
                let mut s = String::from("suites:\n");
                for x in verify::SUITES {
                    let _ = writeln!(s, "  {:24} {}", x.name, x.description);
                }
                s.push_str("corpora:\n");
                for c in verify::builtin_corpora() {
                    let n = c.cases.len();
                    let plural = if n == 1 { "" } else { "s" };
                    let _ = writeln!(s, "  {:22} {} ({n} case{plural})", c.name, c.provenance);
                }
                s
            }
        };
        return Ok(Outcome { text, ok: true });
    }
    let report = verify::run_suite(&a.suite, a.corpus.as_deref()).map_err(err)?;
    let text = match a.format {
        VerifyFormat::Json => to_json(&report)?,
        VerifyFormat::Junit => to_junit(&report),
        VerifyFormat::Table => {
            let mut s = String::new();
            for r in &report.suites {
                let checks: usize = r.cases.iter().map(|c| c.checks).sum();
                let unmet = r.cases.iter().filter(|c| !c.met()).count();
                let _ = writeln!(
                    s,
                    "{} {:24} {:22} {:4} cases {:7} checks{}",
                    if r.ok { "PASS" } else { "FAIL" },
                    r.suite,
                    r.corpus,
                    r.cases.len(),
                    checks,
                    if r.cases.is_empty() {
                        "  no applicable cases".to_string()
                    } else if unmet > 0 {
                        format!("  {unmet} unmet")
                    } else {
                        String::new()
                    }
                );
                for c in r.cases.iter().filter(|c| c.expected == verify::Outcome::Fail && c.met()) {
                    let _ = writeln!(s, "    {}: failed as expected ({})", c.case, c.message);
                    for w in &c.witnesses {
                        let _ = writeln!(s, "      {w}");
                    }
                }
                for c in r.cases.iter().filter(|c| !c.met()) {
                    let _ = writeln!(s, "    {}: {}", c.case, c.message);
                    for w in &c.witnesses {
                        let _ = writeln!(s, "      {w}");
                    }
                }
            }
            let _ = writeln!(s, "{}", if report.ok { "all expectations met" } else { "some expectations unmet" });
            s
        }
    };
    Ok(Outcome { text, ok: report.ok })
}
