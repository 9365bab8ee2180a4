//! One function per command; each returns the report it prints.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use omegalab::cut::eliminate_cuts_with_report;
use omegalab::demo::{counter_demo, omega_cut_demo, omega_cut_instance, OmegaCutDemo};
use omegalab::encodings::induction::induction_goal;
use omegalab::encodings::{
    fixpoint_kit, id_translate, induction_derivation, relativize, relativize_derivation, FixedPoint, IdFormula,
};
use omegalab::interpolate::{certify_interpolant, interpolate as craig, vocabulary};
use omegalab::kernel::{check as kcheck, print_derivation, Calculus, Derivation};
use omegalab::lattice::format::{hasse, parse_frame, parse_order, parse_polarity};
use omegalab::lattice::polarity::format_set;
use omegalab::lattice::{
    concept_lattice, density_check, frame_plus, macneille, regularity_check, ClosedSetLattice, HeytingAlgebra,
    Lattice, Mode,
};
use omegalab::omega::{omega_membership, pool_subsets, OmegaVerdict};
use omegalab::search::{search_cutfree, SearchOutcome};
use omegalab::semantics::format::{algebra_by_name, parse_structure};
use omegalab::semantics::{
    check_validity, omega_soundness_probe, sequent_values, Assignment, Structure, Valuation,
};
use omegalab::syntax::{Formula, Language};
use serde_json::json;

use crate::input::{lift, read, split};
use crate::report::{CliError, Report};
use crate::{DemoCmd, EncodeCmd, Env, LatticeCmd, OmegaCmd};

type Out = Result<Report, CliError>;

fn set_text(fs: &BTreeSet<Formula>) -> String {
    let xs: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", xs.join(", "))
}

fn set_json(fs: &BTreeSet<Formula>) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

fn violations(d: &Derivation, calc: Calculus) -> Vec<String> {
    kcheck(d, calc).iter().map(|v| v.to_string()).collect()
}

/// Appends a derivation with its check result in `calc`.
fn derivation(r: &mut Report, key: &str, d: &Derivation, calc: Calculus) {
    let vs = violations(d, calc);
    r.line(format!("{key}: {} ({} nodes, {} cuts, {})", d.conclusion, d.size(), d.cut_count(), checked(&vs, calc)));
    r.line(print_derivation(d));
    r.field(
        key,
        json!({
            "conclusion": d.conclusion.to_string(),
            "nodes": d.size(),
            "cuts": d.cut_count(),
            "calculus": calc.to_string(),
            "violations": vs,
            "text": print_derivation(d),
        }),
    );
}

fn checked(vs: &[String], calc: Calculus) -> String {
    if vs.is_empty() {
        format!("checked in {calc}")
    } else {
        format!("{} violations in {calc}", vs.len())
    }
}

pub fn check(env: &Env, file: &Path) -> Out {
    let d = env.ctx.derivation_file(file)?;
    let vs = violations(&d, env.calculus);
    let mut r = Report::new(vs.is_empty());
    if vs.is_empty() {
        r.line("ok");
    } else {
        r.line(format!("{} violations", vs.len()));
        for v in &vs {
            r.line(format!("  {v}"));
        }
    }
    r.line(format!("calculus {}", env.calculus));
    r.line(format!("conclusion {}", d.conclusion));
    r.line(format!("nodes {}, cuts {}", d.size(), d.cut_count()));
    r.field("calculus", env.calculus.to_string())
        .field("valid", vs.is_empty())
        .field("violations", vs)
        .field("conclusion", d.conclusion.to_string())
        .field("nodes", d.size())
        .field("cuts", d.cut_count());
    Ok(r)
}

pub fn elim_cut(env: &Env, file: &Path, output: Option<&Path>) -> Out {
    let d = env.ctx.derivation_file(file)?;
    let (e, rep) = eliminate_cuts_with_report(&d)?;
    let vs = violations(&e, Calculus::Li);
    let ok = vs.is_empty() && e.is_cut_free() && e.conclusion == d.conclusion;
    let mut r = Report::new(ok);
    let rank = |k: Option<usize>| k.map_or("none".to_string(), |k| k.to_string());
    r.line(format!("# passes {}", rep.passes.len()));
    r.line(format!("# max cut rank before {}", rank(rep.max_rank_before)));
    for (i, p) in rep.passes.iter().enumerate() {
        r.line(format!(
            "# pass {}: rank {}, max rank after {}, nodes {}",
            i + 1,
            p.rank,
            rank(p.max_rank_after),
            p.nodes_after
        ));
    }
    r.line(format!("# nodes {} -> {}", rep.nodes_before, rep.nodes_after));
    r.line(format!("# cuts after {}, {}", e.cut_count(), checked(&vs, Calculus::Li)));
    let text = print_derivation(&e);
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|err| CliError::input(format!("{}: {err}", path.display())))?;
            r.line(format!("# written to {}", path.display()));
        }
        None => {
            r.line(&text);
        }
    }
    let passes: Vec<_> = rep
        .passes
        .iter()
        .map(|p| json!({ "rank": p.rank, "max_rank_after": p.max_rank_after, "nodes_after": p.nodes_after }))
        .collect();
    r.field("max_rank_before", rep.max_rank_before)
        .field("nodes_before", rep.nodes_before)
        .field("nodes_after", rep.nodes_after)
        .field("passes", passes)
        .field("cuts_after", e.cut_count())
        .field("violations", vs)
        .field("conclusion", e.conclusion.to_string())
        .field("derivation", text);
    Ok(r)
}

pub fn interpolate(env: &Env, file: &Path, left: &str) -> Out {
    let d = env.ctx.derivation_file(file)?;
    let left = env.ctx.formula_set("--left", left)?;
    if let Some(f) = left.iter().find(|f| !d.conclusion.ant.contains(f)) {
        return Err(CliError::input(format!("--left: {f} is not in the antecedent {}", d.conclusion)));
    }
    let right: BTreeSet<Formula> = d.conclusion.ant.difference(&left).cloned().collect();
    let i = craig(&d, &left, &right)?;
    let suc = d.conclusion.suc.as_ref();
    let shared: BTreeSet<String> = vocabulary(&left).intersection(&vocabulary(right.iter().chain(suc))).cloned().collect();
    let cert = certify_interpolant(&i, &left, &right, suc, &env.budget);
    let mut r = Report::new(cert.is_ok());
    r.line(format!("interpolant {i}"));
    r.line(format!("left {}", set_text(&left)));
    r.line(format!("right {}", set_text(&right)));
    r.line(format!("shared vocabulary {{{}}}", shared.iter().cloned().collect::<Vec<_>>().join(", ")));
    match &cert {
        Ok(_) => r.line("certified"),
        Err(e) => r.line(format!("not certified: {e}")),
    };
    r.field("interpolant", i.to_string())
        .field("left", set_json(&left))
        .field("right", set_json(&right))
        .field("shared_vocabulary", shared)
        .field("certified", cert.is_ok())
        .field("certificate_error", cert.err().map(|e| e.to_string()));
    Ok(r)
}

pub fn search(env: &Env, file: &Path) -> Out {
    let goal = env.ctx.sequent_file(file)?;
    match search_cutfree(&goal, &env.budget)? {
        SearchOutcome::Found(d) => {
            let mut r = Report::new(true);
            r.line("found").field("verdict", "found");
            derivation(&mut r, "derivation", &d, Calculus::Li);
            Ok(r)
        }
        SearchOutcome::NotFoundWithinBudget { nodes } => {
            let mut r = Report::new(false);
            r.line(format!("not found within budget ({nodes} nodes)"));
            r.field("verdict", "not-found-within-budget").field("nodes", nodes).field("goal", goal.to_string());
            Ok(r)
        }
    }
}

fn omega_cut_report(d: &OmegaCutDemo) -> Report {
    let ok = d.reduced.conclusion == d.endsequent && d.table.get(&d.gamma) == Some(&d.reduced);
    let mut r = Report::new(ok);
    r.line(format!("q {}", d.q));
    r.line(format!("gamma {}", set_text(&d.gamma)));
    r.line(format!("cut {}", d.endsequent));
    r.line(format!("premises {}", d.table.len()));
    let mut premises = Vec::new();
    for (delta, p) in &d.table {
        r.line(format!("  {} : {}", set_text(delta), p.conclusion));
        premises.push(json!({ "delta": set_json(delta), "conclusion": p.conclusion.to_string() }));
    }
    r.field("q", d.q.to_string())
        .field("gamma", set_json(&d.gamma))
        .field("endsequent", d.endsequent.to_string())
        .field("premises", premises);
    derivation(&mut r, "certificate", &d.left, Calculus::Li);
    derivation(&mut r, "reduced", &d.reduced, Calculus::Lit);
    r
}

pub fn omega(env: &Env, cmd: &OmegaCmd) -> Out {
    let ctx = &env.ctx;
    match cmd {
        OmegaCmd::Membership { q, delta, lambda } => {
            let q = ctx.formula("--q", q)?;
            let delta = ctx.formula_set("--delta", delta)?;
            let lambda = lambda.as_deref().map(|l| ctx.formula("--lambda", l)).transpose()?;
            match omega_membership(&q, &delta, lambda.as_ref(), &env.budget)? {
                OmegaVerdict::Member { derivation: d, y } => {
                    let mut r = Report::new(true);
                    r.line(format!("member, certificate with {y}"));
                    r.field("verdict", "member").field("set_variable", y);
                    derivation(&mut r, "certificate", &d, Calculus::Li);
                    Ok(r)
                }
                OmegaVerdict::NotFoundWithinBudget => {
                    let mut r = Report::new(false);
                    r.line("not found within budget").field("verdict", "not-found-within-budget");
                    Ok(r)
                }
            }
        }
        OmegaCmd::Reduce { q, gamma, pi, pool } => {
            let q = ctx.formula("--q", q)?;
            let gamma = ctx.formula_set("--gamma", gamma)?;
            let pi = ctx.formula("--pi", pi)?;
            let pool = ctx.formula_list("--pool", pool)?;
            Ok(omega_cut_report(&omega_cut_instance(&q, &gamma, &pi, &pool, &env.budget)?))
        }
        OmegaCmd::Probe { structure, q, pool } => {
            let s = parse_structure(&read(structure)?).map_err(|e| lift(&structure.display().to_string(), e))?;
            let q = ctx.formula("--q", q)?;
            let pool = pool_subsets(&ctx.formula_list("--pool", pool)?)?;
            let p = omega_soundness_probe(&s, &q, &pool, &env.budget)?;
            let h = &s.algebra;
            let mut r = Report::new(true);
            r.line(format!("V(q) = {}", h.label(p.q_value)));
            r.line(format!("V(conclusion succedent) = {}", h.label(p.target)));
            let mut certified = Vec::new();
            for e in &p.certified {
                r.line(format!("certified {} : {}", set_text(&e.delta), h.label(e.value)));
                certified.push(json!({ "delta": set_json(&e.delta), "value": h.label(e.value) }));
            }
            for d in &p.not_found {
                r.line(format!("not found {}", set_text(d)));
            }
            r.line(if p.unsound_instance { "UNSOUND-INSTANCE" } else { "no unsound instance" });
            r.field("q_value", h.label(p.q_value))
                .field("target", h.label(p.target))
                .field("certified", certified)
                .field("not_found", p.not_found.iter().map(set_json).collect::<Vec<_>>())
                .field("unsound_instance", p.unsound_instance);
            Ok(r)
        }
    }
}

fn lattice_lines(r: &mut Report, l: &Lattice) {
    r.line(format!("elements {}", l.len()));
    r.line(hasse(l.poset()));
    r.field("elements", l.poset().labels())
        .field("hasse", l.poset().hasse_edges())
        .field("distributive", l.is_distributive());
}

fn closed_lines(r: &mut Report, c: &ClosedSetLattice) {
    r.line(format!("closed sets {}", c.len()));
    let sets: Vec<String> = c.sets.iter().map(|&s| format_set(s)).collect();
    r.line(format!("  {}", sets.join(" ")));
    r.field("closed_sets", sets);
    lattice_lines(r, &c.lattice);
}

fn header(src: &str) -> &str {
    src.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("")
}

pub fn lattice(cmd: &LatticeCmd) -> Out {
    let load = |file: &Path| -> Result<(String, String), CliError> { Ok((read(file)?, file.display().to_string())) };
    match cmd {
        LatticeCmd::Complete { file, heyting } => {
            let (src, name) = load(file)?;
            let mut r = Report::new(true);
            if header(&src) == "polarity" {
                let p = parse_polarity(&src).map_err(|e| lift(&name, e))?;
                closed_lines(&mut r, &concept_lattice(&p, 16)?);
                return Ok(r);
            }
            let p = parse_order(&src).map_err(|e| lift(&name, e))?;
            let mode = if *heyting { Mode::AsHeyting } else { Mode::AsLattice };
            let c = macneille(&p, mode)?;
            closed_lines(&mut r, &c.closed);
            let map: Vec<String> = c.embedding.map.iter().map(|&i| format_set(c.closed.sets[i])).collect();
            for (a, s) in p.labels().iter().zip(&map) {
                r.line(format!("  {a} -> {s}"));
            }
            r.line(format!("order embedding {}", c.embedding.is_order_embedding()));
            r.field("embedding", map).field("order_embedding", c.embedding.is_order_embedding());
            r.ok = c.embedding.is_order_embedding();
            Ok(r)
        }
        LatticeCmd::Frame { file } => {
            let (src, name) = load(file)?;
            let f = parse_frame(&src).map_err(|e| lift(&name, e))?;
            let plus = frame_plus(&f)?;
            let mut r = Report::new(plus.algebra.residuation_holds());
            closed_lines(&mut r, &plus.closed);
            r.line(format!("residuation {}", plus.algebra.residuation_holds()));
            r.field("residuation", plus.algebra.residuation_holds());
            Ok(r)
        }
        LatticeCmd::Density { file, at } => {
            let (src, name) = load(file)?;
            let p = parse_order(&src).map_err(|e| lift(&name, e))?;
            let c = macneille(&p, Mode::AsLattice)?;
            let d = density_check(&c.embedding, *at)?;
            let mut r = Report::new(d.join_dense && d.meet_dense && d.rules_agree);
            r.line(format!("join-dense {}", d.join_dense));
            r.line(format!("meet-dense {}", d.meet_dense));
            r.line(format!("rule formulation agrees {}", d.rules_agree));
            r.field("join_dense", d.join_dense).field("meet_dense", d.meet_dense).field("rules_agree", d.rules_agree);
            Ok(r)
        }
        LatticeCmd::Regularity { file } => {
            let (src, name) = load(file)?;
            let p = parse_order(&src).map_err(|e| lift(&name, e))?;
            let c = macneille(&p, Mode::AsLattice)?;
            let regular = regularity_check(&c.embedding)?;
            let mut r = Report::new(regular);
            r.line(format!("regular {regular}")).field("regular", regular);
            Ok(r)
        }
    }
}

fn value_lines(r: &mut Report, s: &Structure, seq: &omegalab::kernel::Sequent) -> Result<(), CliError> {
    if !seq.free_set_vars().is_empty() || !seq.free_term_vars().is_empty() {
        return Ok(());
    }
    let (a, b) = sequent_values(seq, s, &Valuation::new(), &Assignment::new())?;
    let h = &s.algebra;
    r.line(format!("V(antecedent) = {}, V(succedent) = {}", h.label(a), h.label(b)));
    r.field("antecedent_value", h.label(a)).field("succedent_value", h.label(b));
    Ok(())
}

pub fn eval(env: &Env, structure: &Path, sequent: &str) -> Out {
    let s = parse_structure(&read(structure)?).map_err(|e| lift(&structure.display().to_string(), e))?;
    let seq = env.ctx.sequent("--sequent", sequent)?;
    let valid = check_validity(&seq, &s)?;
    let mut r = Report::new(valid);
    r.line(if valid { "valid" } else { "not valid" });
    r.field("valid", valid).field("sequent", seq.to_string());
    value_lines(&mut r, &s, &seq)?;
    Ok(r)
}

fn definition(env: &Env, src: &str, defs: &BTreeMap<String, Arc<FixedPoint>>) -> Result<FixedPoint, CliError> {
    let bad = || CliError::input(format!("--def: expected `NAME X x := body`, got `{src}`"));
    let (head, body) = src.split_once(":=").ok_or_else(bad)?;
    let [name, set_var, var] = head.split_whitespace().collect::<Vec<_>>()[..] else {
        return Err(bad());
    };
    let body = env.ctx.formula("--def", body)?;
    Ok(FixedPoint::new(name, set_var, var, IdFormula::from_formula(&body, defs))?)
}

fn pr_language(env: &Env, prs: &[String]) -> Result<Language, CliError> {
    let mut lang = Language::pa();
    for src in prs {
        let [name, base, step] = split(src, ';')[..] else {
            return Err(CliError::input(format!("--pr: expected `name; base; step`, got `{src}`")));
        };
        lang = lang.with_pr(name, env.ctx.term("--pr", base)?, env.ctx.term("--pr", step)?)?;
    }
    Ok(lang)
}

pub fn encode(env: &Env, cmd: &EncodeCmd) -> Out {
    let ctx = &env.ctx;
    match cmd {
        EncodeCmd::Relativize { file } => {
            let phi = ctx.formula_file(file)?;
            let out = relativize(&phi)?;
            let mut r = Report::new(true);
            r.line(out.to_string()).line(format!("level {}", out.level()));
            r.field("formula", out.to_string()).field("level", out.level().to_string());
            Ok(r)
        }
        EncodeCmd::Induction { file } => {
            let phi = ctx.formula_file(file)?;
            let d = induction_derivation(&phi)?;
            let goal = induction_goal(&phi)?;
            let mut r = Report::new(kcheck(&d, Calculus::Lip(0)).is_empty() && d.conclusion == goal);
            r.field("goal", goal.to_string());
            derivation(&mut r, "derivation", &d, Calculus::Lip(0));
            Ok(r)
        }
        EncodeCmd::Fixpoint { file, set_var, var, level, tau } => {
            let body = ctx.formula_file(file)?;
            let kit = fixpoint_kit(&body, set_var, var, *level)?;
            let calc = Calculus::Lip(*level);
            let mut ok = kcheck(&kit.lfp1, calc).is_empty();
            let mut r = Report::new(true);
            r.line(format!("Fix = {}", kit.fix)).line(format!("level {}", kit.fix.level()));
            r.field("fix", kit.fix.to_string()).field("level", kit.fix.level().to_string());
            derivation(&mut r, "lfp1", &kit.lfp1, calc);
            if let Some(tau) = tau {
                let d = kit.lfp2(&ctx.abstract_("--tau", tau)?, *level)?;
                ok &= kcheck(&d, calc).is_empty();
                derivation(&mut r, "lfp2", &d, calc);
            }
            r.ok = ok;
            Ok(r)
        }
        EncodeCmd::IdTranslate { file, defs } => {
            let mut table: BTreeMap<String, Arc<FixedPoint>> = BTreeMap::new();
            for src in defs {
                let def = definition(env, src, &table)?;
                table.insert(def.name.clone(), Arc::new(def));
            }
            let phi = IdFormula::from_formula(&ctx.formula_file(file)?, &table);
            let out = id_translate(&phi)?;
            let mut r = Report::new(true);
            r.line(out.to_string());
            r.line(format!("id level {}, level {}", phi.id_level(), out.level()));
            r.field("formula", out.to_string())
                .field("id_level", phi.id_level())
                .field("level", out.level().to_string());
            Ok(r)
        }
        EncodeCmd::RelativizeDerivation { file, prs } => {
            let lang = pr_language(env, prs)?;
            let d = ctx.derivation_file(file)?;
            let out = relativize_derivation(&d, &lang)?;
            let mut r = Report::new(kcheck(&out, Calculus::Lip(0)).is_empty());
            derivation(&mut r, "derivation", &out, Calculus::Lip(0));
            Ok(r)
        }
    }
}

fn demo_algebra(name: &str, file: Option<&Path>) -> Result<HeytingAlgebra, CliError> {
    if let Some(file) = file {
        let p = parse_order(&read(file)?).map_err(|e| lift(&file.display().to_string(), e))?;
        return Ok(HeytingAlgebra::new(Lattice::new(p)?)?);
    }
    let words: Vec<&str> = name.split_whitespace().collect();
    algebra_by_name(&words).ok_or_else(|| CliError::input(format!("--algebra: unknown algebra `{name}`")))
}

pub fn demo(env: &Env, cmd: &DemoCmd) -> Out {
    let _ = env;
    match cmd {
        DemoCmd::PCounter2 { algebra, algebra_file } => {
            let d = counter_demo(demo_algebra(algebra, algebra_file.as_deref())?)?;
            let h = &d.structure.algebra;
            let mut r = Report::new(true);
            r.line(format!("algebra {} elements", h.len()));
            r.line(hasse(h.poset()));
            r.line(format!("M = {{{}}}", d.structure.universe().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")));
            r.line(format!("q = {}", d.q));
            let mut values = Vec::new();
            for (f, v) in &d.values {
                let point: Vec<String> = f.iter().map(|&i| h.label(i).to_string()).collect();
                r.line(format!("X(*) = {} : {}", point.join(","), h.label(*v)));
                values.push(json!({ "valuation": point, "value": h.label(*v) }));
            }
            r.line(format!("V(q) = {}", h.label(d.meet)));
            let mut certified = Vec::new();
            for e in &d.probe.certified {
                r.line(format!("certified {} : {}", set_text(&e.delta), h.label(e.value)));
                certified.push(json!({ "delta": set_json(&e.delta), "value": h.label(e.value) }));
            }
            r.line(if d.probe.unsound_instance { "UNSOUND-INSTANCE" } else { "no unsound instance" });
            r.field("algebra", h.poset().labels())
                .field("q", d.q.to_string())
                .field("values", values)
                .field("meet", h.label(d.meet))
                .field("certified", certified)
                .field("unsound_instance", d.probe.unsound_instance);
            Ok(r)
        }
        DemoCmd::OmegaCut => Ok(omega_cut_report(&omega_cut_demo()?)),
    }
}
