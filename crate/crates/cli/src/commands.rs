use serde_json::{json, Value};
use textile_core::examples;
use textile_core::io::{InputDocument, Object};
use textile_core::shift2d::{
    corner_fibration_report, dual_textile_of, entropy_table, from_rank2, rank2_check, textile_of, tile_rectangle,
    Corner, EntropyRow, TileMode, Tiling,
};
use textile_core::textile::MorphismLifting;
use textile_core::tower::{oracle_level, tower};
use textile_core::{
    algebra_report, count_lifts, Block, Budget, LiftDirection, LiftReport, MatrixShift, Side, TextileSystem, Which,
};

use crate::load::{is_shift_like, is_textile_like, load, shift_of, textile_of_object, Loaded};
use crate::report::{biguint_json, group_json, matrix_json, matrix_text};
use crate::{Cli, Command, DirectionArg, Done, Failure, MorphismArg};

pub(crate) fn execute(cli: &Cli) -> Result<Done, Failure> {
    let budget = cli.budget.map_or(Budget::DEFAULT, Budget::new);
    let (mut done, notes) = match &cli.command {
        Command::Example { name, emit } => return example(name.as_deref(), *emit),
        Command::Validate { file, object } => with_file(file, |l| validate(l, object.as_deref(), budget))?,
        Command::Dual { file, object } => with_file(file, |l| dual(l, object.as_deref()))?,
        Command::Blocks {
            file,
            object,
            m,
            n,
            count_only,
        } => with_file(file, |l| blocks(l, object.as_deref(), *m, *n, *count_only, budget))?,
        Command::TextileOf {
            file,
            object,
            m,
            n,
            dual,
        } => with_file(file, |l| textile_of_cmd(l, object.as_deref(), *m, *n, *dual, budget))?,
        Command::Tower {
            file,
            object,
            side,
            levels,
            oracle,
        } => with_file(file, |l| tower_cmd(l, object.as_deref(), *side, *levels, *oracle, budget))?,
        Command::Invariants {
            file,
            object,
            side,
            level,
        } => with_file(file, |l| invariants(l, object.as_deref(), *side, *level, budget))?,
        Command::CheckLifting { file, object } => with_file(file, |l| check_lifting(l, object.as_deref(), budget))?,
        Command::CountLifts {
            file,
            object,
            morphism,
            path,
            direction,
            anchor,
        } => with_file(file, |l| {
            count_lifts_cmd(l, object.as_deref(), *morphism, path, *direction, anchor.as_deref())
        })?,
        Command::Rank2Check { file, object } => with_file(file, |l| rank2_cmd(l, object.as_deref(), budget))?,
        Command::Tile {
            file,
            object,
            w,
            h,
            witness,
            all,
        } => {
            let mode = match (witness, all) {
                (true, _) => TileMode::Witness,
                (_, true) => TileMode::All,
                _ => TileMode::Count,
            };
            with_file(file, |l| tile(l, object.as_deref(), *w, *h, mode, budget))?
        }
        Command::Entropy { file, object, max_n } => with_file(file, |l| entropy(l, object.as_deref(), *max_n, budget))?,
    };
    let mut all = notes;
    all.append(&mut done.notes);
    done.notes = all;
    Ok(done)
}

fn with_file(file: &str, f: impl FnOnce(&Loaded) -> Result<Done, Failure>) -> Result<(Done, Vec<String>), Failure> {
    let loaded = load(file)?;
    let done = f(&loaded)?;
    Ok((done, loaded.notes))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Rows from the top, symbols concatenated when single-character.
fn block_rows(alphabet: &[String], b: &Block) -> Vec<String> {
    let compact = alphabet.iter().all(|s| s.chars().count() == 1);
    (0..b.height())
        .rev()
        .map(|j| {
            let syms: Vec<&str> = b.row(j).iter().map(|&s| alphabet[s].as_str()).collect();
            syms.join(if compact { "" } else { "," })
        })
        .collect()
}

fn lifting_phrase(r: &LiftReport) -> String {
    let one = |m: &MorphismLifting| match m.summary() {
        "covering" => "covering",
        "fibration" => "fibration, not covering",
        _ => "no path lifting",
    };
    let both = |m: &MorphismLifting| match m.summary() {
        "covering" => "coverings",
        "fibration" => "fibrations, not coverings",
        _ => "without path lifting",
    };
    if r.p.summary() == r.q.summary() {
        format!("p,q {}", both(&r.p))
    } else {
        format!("p {}, q {}", one(&r.p), one(&r.q))
    }
}

fn direction_name(d: LiftDirection) -> &'static str {
    match d {
        LiftDirection::Source => "source",
        LiftDirection::Range => "range",
    }
}

fn lifting_json(m: &MorphismLifting) -> Value {
    json!({
        "summary": m.summary(),
        "s_lift_exists": m.s_lift_exists,
        "s_lift_unique": m.s_lift_unique,
        "r_lift_exists": m.r_lift_exists,
        "r_lift_unique": m.r_lift_unique,
        "witnesses": m.failure_witnesses.iter().map(|w| json!({
            "direction": direction_name(w.direction),
            "vertex": w.vertex,
            "h_edge": w.h_edge,
            "lifts": w.lifts,
        })).collect::<Vec<_>>(),
    })
}

fn lifting_text(r: &LiftReport) -> String {
    let mut out = String::new();
    for (name, m) in [("p", &r.p), ("q", &r.q)] {
        out += &format!("{name}: {}\n", m.summary());
        for w in &m.failure_witnesses {
            out += &format!(
                "  {} lift of {} at {}: {} lifts\n",
                direction_name(w.direction),
                w.h_edge,
                w.vertex,
                w.lifts
            );
        }
    }
    out
}

fn validate_one(name: &str, object: &Object, budget: Budget) -> (bool, String, Value) {
    let describe = |valid: bool, text: String| {
        let v = json!({ "name": name, "kind": object.kind(), "valid": valid, "detail": text });
        (valid, format!("{name}: {text}"), v)
    };
    let textile_line = |t: &TextileSystem, what: &str| {
        let rep = t.validate();
        if rep.is_valid() {
            describe(true, format!("{what} valid; {}", lifting_phrase(&t.lifting_report())))
        } else {
            describe(false, format!("{what} invalid: {}", rep.describe(t)))
        }
    };
    match object {
        Object::Graph(g) => describe(
            true,
            format!("graph with {} vertices and {} edges", g.vertex_count(), g.edge_count()),
        ),
        Object::Morphism { value, .. } => {
            let rep = value.validate();
            if rep.is_morphism() {
                let onto = if rep.is_surjective() { "onto" } else { "not onto" };
                describe(true, format!("morphism valid, {onto}"))
            } else {
                let edges: Vec<&str> = rep
                    .commutation_failures
                    .iter()
                    .map(|f| value.domain().edge_name(f.edge))
                    .collect();
                describe(false, format!("morphism invalid: endpoints not preserved at {}", edges.join(", ")))
            }
        }
        Object::Textile { value, .. } => textile_line(value, "textile"),
        Object::RankTwo { value, .. } => match from_rank2(value) {
            Ok(t) => textile_line(&t, "rank-two data valid; textile"),
            Err(e) => describe(false, format!("rank-two data invalid: {e}")),
        },
        Object::Shift(x) => {
            let coherence = match x.coherence() {
                Ok(c) if c.coherent => "coherent".to_string(),
                Ok(_) => "not coherent".to_string(),
                Err(e) => format!("coherence undefined ({e})"),
            };
            describe(true, format!("shift on {} symbols, {coherence}", x.size()))
        }
        Object::Automaton(ca) => match ca.to_matrix_shift() {
            Ok(x) => describe(
                true,
                format!(
                    "cellular automaton on {} symbols with window {}; matrix shift on {} symbols",
                    ca.alphabet().len(),
                    ca.window(),
                    x.size()
                ),
            ),
            Err(e) => describe(false, format!("cellular automaton invalid: {e}")),
        },
        Object::Pattern(p) => match textile_core::shift2d::recode_to_matrix_shift(p, budget) {
            Ok(r) => describe(
                true,
                format!(
                    "pattern shift with {} allowed patterns; matrix shift on {} symbols",
                    p.patterns().len(),
                    r.shift.size()
                ),
            ),
            Err(e) => describe(false, format!("pattern shift invalid: {e}")),
        },
    }
}

fn validate(l: &Loaded, object: Option<&str>, budget: Budget) -> Result<Done, Failure> {
    let selected: Vec<(String, &Object)> = match object {
        Some(_) => vec![l.select(object, "object", |_| true)?],
        None => l.doc.entries().iter().map(|(n, o)| (n.clone(), o)).collect(),
    };
    let mut text = String::new();
    let mut items = Vec::new();
    let mut all_valid = true;
    for (name, o) in &selected {
        let (valid, line, v) = validate_one(name, o, budget);
        all_valid &= valid;
        text += &line;
        text.push('\n');
        items.push(v);
    }
    if selected.is_empty() {
        text += "empty document\n";
    }
    let mut done = Done::new(json!({ "valid": all_valid, "objects": items }), text);
    done.code = if all_valid { 0 } else { 1 };
    Ok(done)
}

fn emit(name: &str, t: &TextileSystem) -> Result<Done, Failure> {
    let doc = InputDocument::from_textile(name, t)?;
    let text = doc.to_text();
    let mut done = Done::new(
        json!({
            "name": name,
            "g": { "vertices": t.g().vertex_count(), "edges": t.g().edge_count() },
            "h": { "vertices": t.h().vertex_count(), "edges": t.h().edge_count() },
            "text": text,
        }),
        text,
    );
    done.raw = true;
    Ok(done)
}

fn dual(l: &Loaded, object: Option<&str>) -> Result<Done, Failure> {
    let (name, o) = l.select(object, "textile", is_textile_like)?;
    let mut notes = Vec::new();
    let t = textile_of_object(o, &mut notes)?;
    let mut done = emit(&format!("{name}-dual"), &t.dual()?)?;
    done.notes = notes;
    Ok(done)
}

fn blocks(l: &Loaded, object: Option<&str>, m: usize, n: usize, count_only: bool, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "shift", is_shift_like)?;
    let mut notes = Vec::new();
    let (alphabet, found) = match o {
        Object::Automaton(ca) => {
            notes.push("blocks of the space-time diagrams, over the automaton's own alphabet".into());
            let p = ca.space_time_pattern()?;
            (p.alphabet().to_vec(), p.enumerate_blocks(m, n, budget)?)
        }
        Object::Pattern(p) => {
            notes.push("blocks over the pattern shift's own alphabet".into());
            (p.alphabet().to_vec(), p.enumerate_blocks(m, n, budget)?)
        }
        _ => {
            let x = shift_of(o, budget, &mut notes)?;
            (x.alphabet().to_vec(), x.enumerate_blocks(m, n, budget)?)
        }
    };
    let rows: Vec<Vec<String>> = found.iter().map(|b| block_rows(&alphabet, b)).collect();
    let mut text = format!("{} admissible {m}x{n} blocks\n", found.len());
    let result = if count_only {
        json!({ "width": m, "height": n, "count": found.len() })
    } else {
        for r in &rows {
            text += &format!("  {}\n", r.join("/"));
        }
        json!({ "width": m, "height": n, "count": found.len(), "blocks": rows })
    };
    let mut done = Done::new(result, text);
    done.notes = notes;
    Ok(done)
}

fn textile_of_cmd(l: &Loaded, object: Option<&str>, m: usize, n: usize, dual: bool, budget: Budget) -> Result<Done, Failure> {
    let (name, o) = l.select(object, "shift", is_shift_like)?;
    let mut notes = Vec::new();
    let x = shift_of(o, budget, &mut notes)?;
    let (t, label) = if dual {
        (dual_textile_of(&x, m, n, budget)?, format!("{name}-dualT{m}x{n}"))
    } else {
        (textile_of(&x, m, n, budget)?, format!("{name}-T{m}x{n}"))
    };
    let mut done = emit(&label, &t)?;
    done.notes = notes;
    Ok(done)
}

fn level_name(side: Side, n: usize) -> String {
    format!("{side}_{n}")
}

fn tower_cmd(l: &Loaded, object: Option<&str>, side: Side, levels: usize, oracle: bool, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "shift", is_shift_like)?;
    let mut notes = Vec::new();
    let x = shift_of(o, budget, &mut notes)?;
    let t = tower(&x, side, levels, budget)?;
    notes.extend(t.warnings());
    let mut text = String::new();
    let mut items = Vec::new();
    let mut all_agree = true;
    for level in &t.levels {
        let strips: Vec<String> = (0..level.k()).map(|i| level.strip_name(&x, i)).collect();
        let deleted = level.deleted_indices();
        let agrees = if oracle {
            let o = oracle_level(&x, side, level.n, budget)?;
            let same = o.strips == level.strips && o.matrix == level.matrix;
            all_agree &= same;
            Some(same)
        } else {
            None
        };
        text += &format!("{} (k = {})", level_name(side, level.n), level.k());
        if level.parent_indices.is_some() {
            text += &format!(", deleted Kronecker indices {deleted:?}");
        }
        if let Some(a) = agrees {
            text += if a { ", oracle agrees" } else { ", ORACLE DISAGREES" };
        }
        text += &format!("\n  strips: {}\n", strips.join(" "));
        text += &matrix_text(&level.matrix);
        if level.parent_indices.is_some() && !level.deletes_tail() {
            notes.push(format!(
                "level {} deletes indices other than the trailing ones",
                level.n
            ));
        }
        items.push(json!({
            "n": level.n,
            "k": level.k(),
            "strips": strips,
            "matrix": matrix_json(&level.matrix),
            "deleted": deleted,
            "oracle_agrees": agrees,
        }));
    }
    let ks = t.k_sequence();
    let ks_text: Vec<String> = ks.iter().map(ToString::to_string).collect();
    text += &format!("k = ({})\n", ks_text.join(","));
    if oracle {
        text += if all_agree {
            "oracle agreement at every level\n"
        } else {
            "oracle disagreement\n"
        };
    }
    let mut done = Done::new(
        json!({
            "side": side.to_string(),
            "levels": items,
            "k_sequence": ks,
            "coherent": t.coherent,
            "oracle": if oracle { json!(all_agree) } else { Value::Null },
        }),
        text,
    );
    done.notes = notes;
    if !all_agree {
        done.code = 1;
    }
    Ok(done)
}

fn invariants(l: &Loaded, object: Option<&str>, side: Side, level: usize, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "shift", is_shift_like)?;
    let mut notes = Vec::new();
    let x = shift_of(o, budget, &mut notes)?;
    let r = algebra_report(&x, side, level, budget)?;
    let d = &r.descriptor;
    let k1 = if d.k1.is_trivial() { "0".to_string() } else { d.k1.to_string() };
    let text = format!(
        "{}: tag {}, K0 = {}, K1 = {}\n  k = {}, irreducible {}, permutation {}, simple and purely infinite {}\n",
        r.label,
        d.tag,
        d.k0,
        k1,
        d.matrix.rows(),
        yes_no(d.flags.irreducible),
        yes_no(d.flags.permutation),
        yes_no(d.flags.simple_purely_infinite)
    );
    notes.extend(r.notes.iter().cloned());
    let mut done = Done::new(
        json!({
            "label": r.label,
            "side": side.to_string(),
            "n": r.n,
            "k": d.matrix.rows(),
            "tag": d.tag.to_string(),
            "matrix": matrix_json(&d.matrix),
            "k0": group_json(&d.k0),
            "k1": group_json(&d.k1),
            "flags": {
                "irreducible": d.flags.irreducible,
                "permutation": d.flags.permutation,
                "simple_purely_infinite": d.flags.simple_purely_infinite,
            },
            "simple_by_level": r.simple_by_level,
        }),
        text,
    );
    done.notes = notes;
    Ok(done)
}

fn is_full_shift(x: &MatrixShift) -> bool {
    x.size() > 1
        && x.horizontal().entries().iter().all(|&e| e == 1)
        && x.vertical().entries().iter().all(|&e| e == 1)
}

fn check_lifting(l: &Loaded, object: Option<&str>, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "textile or shift", |o| is_textile_like(o) || is_shift_like(o))?;
    let mut notes = Vec::new();
    if is_textile_like(o) {
        let t = textile_of_object(o, &mut notes)?;
        t.ensure_valid()?;
        let r = t.lifting_report();
        let text = format!("{}\n{}", lifting_phrase(&r), lifting_text(&r));
        let mut done = Done::new(
            json!({ "source": "textile", "p": lifting_json(&r.p), "q": lifting_json(&r.q) }),
            text,
        );
        done.notes = notes;
        return Ok(done);
    }
    let x = shift_of(o, budget, &mut notes)?;
    let t = textile_of(&x, 2, 2, budget)?;
    let r = t.lifting_report();
    let corner = corner_fibration_report(&x)?;
    let agree = corner == r;
    if is_full_shift(&x) {
        notes.push(format!(
            "full shift on {k} symbols: each lifting question of T(2,2) has {k} solutions, so p and q are \
             fibrations but not coverings under the unique-lifting definition",
            k = x.size()
        ));
    }
    let mut text = format!("T(2,2): {}\n{}", lifting_phrase(&r), lifting_text(&r));
    text += if agree {
        "corner cross-check agrees\n"
    } else {
        "corner cross-check DISAGREES\n"
    };
    let mut done = Done::new(
        json!({
            "source": "T(2,2)",
            "p": lifting_json(&r.p),
            "q": lifting_json(&r.q),
            "corner_agrees": agree,
        }),
        text,
    );
    done.notes = notes;
    if !agree {
        done.code = 1;
    }
    Ok(done)
}

fn count_lifts_cmd(
    l: &Loaded,
    object: Option<&str>,
    morphism: MorphismArg,
    path: &[String],
    direction: DirectionArg,
    anchor: Option<&str>,
) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "textile", is_textile_like)?;
    let mut notes = Vec::new();
    let t = textile_of_object(o, &mut notes)?;
    let (which, mname) = match morphism {
        MorphismArg::P => (Which::P, "p"),
        MorphismArg::Q => (Which::Q, "q"),
    };
    let phi = t.morphism(which);
    let h = phi.codomain();
    let edges = path
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| h.edge_id(s).ok_or_else(|| Failure::Usage(format!("H has no edge `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let anchor_id = anchor
        .map(|a| h.vertex_id(a).ok_or_else(|| Failure::Usage(format!("H has no vertex `{a}`"))))
        .transpose()?;
    let dir = match direction {
        DirectionArg::Source => LiftDirection::Source,
        DirectionArg::Range => LiftDirection::Range,
    };
    let c = count_lifts(phi, anchor_id, &edges, dir)?;
    let g = phi.domain();
    let path_names: Vec<&str> = edges.iter().map(|&e| h.edge_name(e)).collect();
    let mut text = format!(
        "lifts of ({}) under {mname}, by {} vertex:\n",
        path_names.join(","),
        direction_name(dir)
    );
    for (v, n) in &c.per_vertex {
        text += &format!("  {}: {n}\n", g.vertex_name(*v));
    }
    text += &format!("total: {}\n", c.total);
    let mut done = Done::new(
        json!({
            "morphism": mname,
            "path": path_names,
            "direction": direction_name(dir),
            "per_vertex": c.per_vertex.iter().map(|(v, n)| json!({
                "vertex": g.vertex_name(*v),
                "lifts": biguint_json(n),
            })).collect::<Vec<_>>(),
            "total": biguint_json(&c.total),
        }),
        text,
    );
    done.notes = notes;
    Ok(done)
}

fn rank2_cmd(l: &Loaded, object: Option<&str>, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "shift or rank-two data", |o| {
        is_shift_like(o) || matches!(o, Object::RankTwo { .. })
    })?;
    let mut notes = Vec::new();
    let mut extra = Value::Null;
    let mut text = String::new();
    let x = if let Object::RankTwo { value, .. } = o {
        let t = from_rank2(value)?;
        t.ensure_valid()?;
        let r = t.lifting_report();
        text += &format!(
            "textile valid; q unique source lifting {}, p unique range lifting {}\n",
            yes_no(r.q.s_lift_unique),
            yes_no(r.p.r_lift_unique)
        );
        extra = json!({ "p": lifting_json(&r.p), "q": lifting_json(&r.q) });
        MatrixShift::from_textile(&t)?
    } else {
        shift_of(o, budget, &mut notes)?
    };
    let c = rank2_check(&x);
    text += &format!(
        "commute {}, unique factorization {}\n",
        yes_no(c.commute),
        yes_no(c.unique_factorization)
    );
    let witness = c.witness.as_ref().map(|w| {
        let names = x.alphabet();
        let (a, m, b) = w.path;
        let orientation = match w.orientation {
            Corner::RightThenUp => "right then up",
            Corner::UpThenRight => "up then right",
        };
        text += &format!(
            "  path {} -> {} -> {} ({orientation}) has {} completions\n",
            names[a], names[m], names[b], w.completions
        );
        json!({
            "orientation": orientation,
            "path": [names[a], names[m], names[b]],
            "completions": w.completions,
        })
    });
    let mut done = Done::new(
        json!({
            "commute": c.commute,
            "unique_factorization": c.unique_factorization,
            "witness": witness,
            "textile": extra,
        }),
        text,
    );
    done.notes = notes;
    Ok(done)
}

fn tile(l: &Loaded, object: Option<&str>, w: usize, h: usize, mode: TileMode, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "shift", is_shift_like)?;
    let mut notes = Vec::new();
    let x = shift_of(o, budget, &mut notes)?;
    let alphabet = x.alphabet();
    let (result, text) = match tile_rectangle(&x, w, h, mode, budget)? {
        Tiling::Count(n) => (json!({ "count": n }), format!("{n} tilings of {w}x{h}\n")),
        Tiling::Witness(None) => (json!({ "witness": null }), format!("no tiling of {w}x{h}\n")),
        Tiling::Witness(Some(b)) => {
            let rows = block_rows(alphabet, &b);
            let text = format!("a tiling of {w}x{h}:\n{}", rows.iter().map(|r| format!("  {r}\n")).collect::<String>());
            (json!({ "witness": rows }), text)
        }
        Tiling::All(all) => {
            let rows: Vec<Vec<String>> = all.iter().map(|b| block_rows(alphabet, b)).collect();
            let mut text = format!("{} tilings of {w}x{h}\n", all.len());
            for r in &rows {
                text += &format!("  {}\n", r.join("/"));
            }
            (json!({ "count": all.len(), "all": rows }), text)
        }
    };
    let mut done = Done::new(result, text);
    done.notes = notes;
    Ok(done)
}

fn entropy(l: &Loaded, object: Option<&str>, max_n: usize, budget: Budget) -> Result<Done, Failure> {
    let (_, o) = l.select(object, "shift", is_shift_like)?;
    let mut notes = Vec::new();
    let x = shift_of(o, budget, &mut notes)?;
    let rows: Vec<EntropyRow<f64>> = entropy_table(&x, max_n, budget)?;
    let mut text = String::from("n  count  log2(count)/n^2\n");
    let mut items = Vec::new();
    for r in &rows {
        text += &format!("{}  {}  {}\n", r.n, r.count, r.normalized);
        let normalized = if r.normalized.is_finite() { json!(r.normalized) } else { Value::Null };
        items.push(json!({ "n": r.n, "count": biguint_json(&r.count), "normalized": normalized }));
    }
    if rows.iter().any(|r| !r.normalized.is_finite()) {
        notes.push("a null normalized value means there are no blocks of that size".into());
    }
    let mut done = Done::new(json!({ "rows": items }), text);
    done.notes = notes;
    Ok(done)
}

fn example(name: Option<&str>, emit_source: bool) -> Result<Done, Failure> {
    let Some(name) = name else {
        let names: Vec<&str> = examples::names().collect();
        let text = names.iter().map(|n| format!("{n}\n")).collect();
        return Ok(Done::new(json!({ "examples": names }), text));
    };
    let source = examples::source(name).ok_or_else(|| {
        let names: Vec<&str> = examples::names().collect();
        Failure::Usage(format!("no built-in example `{name}` (available: {})", names.join(", ")))
    })?;
    if emit_source {
        let mut done = Done::new(json!({ "name": name, "text": source }), source.to_string());
        done.raw = true;
        return Ok(done);
    }
    let doc = examples::document(name)?;
    let objects: Vec<Value> = doc
        .entries()
        .iter()
        .map(|(n, o)| json!({ "name": n, "kind": o.kind() }))
        .collect();
    let text = doc
        .entries()
        .iter()
        .map(|(n, o)| format!("{n}: {}\n", o.kind()))
        .collect();
    Ok(Done::new(json!({ "name": name, "objects": objects }), text))
}
