use std::collections::BTreeMap;

use alcove::diagram::{
    alcove_automorphism_group, build_diagram, coxeter_generator_recipe, diagram_automorphisms, pi,
    DiagramAut, Factor,
};
use alcove::fundcheck::{
    is_fundamental_domain, stratified_centralizers, vertex_permutation, GroupAction,
    StratificationReport,
};
use alcove::group::cycle_notation;
use alcove::polytope::{
    alcove, balanced_root, bounding_hyperplanes, enumerate_vertices, face_cap_from_env,
    fundamental_polytope_with, komrakov_premet, slicing_roots, vertex_count_formula_a, volume,
    BalancedRoot, HPolytope, Support, VPolytope,
};
use alcove::rootsys::{Family, RootSystem, RootSystemId};
use alcove::weyl::{dirichlet_domain, fundamental_group};
use alcove::{Error, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::output::{kac, point, points_json, yes_no, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolytopeChoice {
    Alcove,
    Kp,
    Fund,
    Dirichlet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupChoice {
    Omega,
    Aut,
    Walls,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupportChoice {
    Minuscule,
    Any,
}

/// Override of the standard slicing roots.
#[derive(Clone, Debug, Default)]
pub struct SliceOverride {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub involution: Option<String>,
    pub support: Option<SupportChoice>,
}

impl SliceOverride {
    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty() && self.involution.is_none() && self.support.is_none()
    }
}

/// Parses "(16)(35)" or "(1 6)(3 5)" into a diagram automorphism of rank n.
pub fn parse_cycles(n: usize, text: &str) -> Result<DiagramAut> {
    let bad = || Error::Parse(format!("bad cycle notation {text:?}"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = body.find(')').ok_or_else(bad)?;
        let inner = &body[..end];
        let cycle: Vec<usize> = if inner.contains([' ', ',']) {
            inner
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            inner.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if cycle.iter().any(|&i| i > n) {
            return Err(bad());
        }
        cycles.push(cycle);
        rest = body[end + 1..].trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Ok(DiagramAut::from_cycles(n, &refs))
}

fn slice_roots(rs: &RootSystem, o: &SliceOverride) -> Result<Vec<BalancedRoot>> {
    if o.is_empty() {
        return Ok(slicing_roots(rs));
    }
    let standard = slicing_roots(rs);
    let phi0 = match &o.involution {
        Some(text) => parse_cycles(rs.rank(), text)?,
        None => standard
            .first()
            .map(|b| b.involution.clone())
            .ok_or_else(|| Error::InvalidBalancedRoot("no diagram involution for this type; pass --involution".into()))?,
    };
    let (plus, minus) = if o.plus.is_empty() && o.minus.is_empty() {
        let b = standard
            .iter()
            .find(|b| b.involution == phi0)
            .ok_or_else(|| Error::InvalidBalancedRoot("pass --plus/--minus for this involution".into()))?;
        (b.plus.clone(), b.minus.clone())
    } else {
        (o.plus.clone(), o.minus.clone())
    };
    let support = match o.support.unwrap_or(SupportChoice::Minuscule) {
        SupportChoice::Minuscule => Support::Minuscule,
        SupportChoice::Any => Support::Any,
    };
    Ok(vec![balanced_root(rs, &phi0, &plus, &minus, support)?])
}

fn polytope(rs: &RootSystem, which: PolytopeChoice, slice: &SliceOverride) -> Result<HPolytope> {
    Ok(match which {
        PolytopeChoice::Alcove => alcove(rs),
        PolytopeChoice::Kp => komrakov_premet(rs),
        PolytopeChoice::Fund => fundamental_polytope_with(rs, &slice_roots(rs, slice)?)?,
        PolytopeChoice::Dirichlet => dirichlet_domain(rs),
    })
}

fn group(rs: &RootSystem, which: GroupChoice) -> GroupAction {
    match which {
        GroupChoice::Omega => GroupAction::omega(rs),
        GroupChoice::Aut => GroupAction::alcove_automorphisms(rs),
        GroupChoice::Walls => GroupAction::alcove_walls(rs),
        GroupChoice::Extended => GroupAction::extended(rs),
    }
}

fn root_string(b: &BalancedRoot) -> String {
    let mut s = String::new();
    for (k, i) in b.plus.iter().enumerate() {
        s.push_str(&format!("{}α{i}", if k == 0 { "" } else { " + " }));
    }
    for i in &b.minus {
        s.push_str(&format!(" − α{i}"));
    }
    s
}

fn factor_string(f: &Factor) -> String {
    match f {
        Factor::Omega(0) => "1".into(),
        Factor::Omega(j) => format!("ω{j}"),
        Factor::Phi(p) => format!("φ{}", p.cycles()),
    }
}

fn vertex_rows(report: &mut Report, rs: &RootSystem, v: &VPolytope) {
    for (k, x) in v.vertices.iter().enumerate() {
        report.row(vec![k.to_string(), point(x), kac(rs, x)]);
    }
}

fn vertex_json(rs: &RootSystem, v: &VPolytope) -> Value {
    Value::Array(
        v.vertices
            .iter()
            .map(|x| {
                json!({
                    "alpha": x.to_strings(),
                    "kac": alcove::fundcheck::kac_coordinates(rs, x).iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn info(rs: &RootSystem) -> Report {
    let mut r = Report::new(format!("{}: rank {}, {} positive roots", rs.id, rs.rank(), rs.positive_roots.len()), rs.to_json())
        .columns(&["node", "mark", "minuscule", "coweight"]);
    for i in 1..=rs.rank() {
        r.row(vec![i.to_string(), rs.mark(i).to_string(), yes_no(rs.is_minuscule(i)), point(rs.coweight(i))]);
    }
    r.note(format!("highest root: {}", point(&rs.highest_root)));
    r.note(format!("minuscule nodes: {:?}", rs.minuscule));
    r
}

pub fn omega(rs: &RootSystem) -> Result<Report> {
    let g = fundamental_group(rs);
    let json = serde_json::to_value(&g).expect("serializes");
    let mut r = Report::new(format!("Ω({}) ≅ {}", rs.id, g.kind), json).columns(&[
        "element",
        "vertex permutation",
        "translation",
        "image of 0 (Kac)",
    ]);
    for (k, e) in g.elements.iter().enumerate() {
        let name = if g.labels[k] == 0 { "1".to_string() } else { format!("ω{}", g.labels[k]) };
        let perm = vertex_permutation(rs, e).ok_or_else(|| Error::Degenerate("ω does not permute the vertices".into()))?;
        r.row(vec![name, cycle_notation(&perm), point(&e.translation), kac(rs, &e.translation)]);
    }
    r.note(format!("multiplication table: {:?}", g.table.table));
    Ok(r)
}

pub fn aut_alcove(rs: &RootSystem) -> Result<Report> {
    let aut = alcove_automorphism_group(rs);
    let json = serde_json::to_value(&aut).expect("serializes");
    let mut r = Report::new(format!("Aut(𝒜) for {}: order {}, {}", rs.id, aut.order(), aut.kind), json).columns(&[
        "element",
        "affine node permutation",
        "vertex permutation",
        "ω ∘ φ",
        "generator",
    ]);
    for (k, e) in aut.elements.iter().enumerate() {
        let perm = vertex_permutation(rs, e).ok_or_else(|| Error::Degenerate("not an alcove automorphism".into()))?;
        let d = &aut.decomposition[k];
        let gen = aut.generators.iter().find(|g| g.element == k).map_or(String::new(), |g| g.name.clone());
        r.row(vec![
            k.to_string(),
            aut.diagram_auts[k].cycles(),
            cycle_notation(&perm),
            format!("{} ∘ φ{}", factor_string(&Factor::Omega(d.omega)), d.phi.cycles()),
            gen,
        ]);
    }
    Ok(r)
}

fn polytope_report(rs: &RootSystem, title: String, h: &HPolytope, extra: Value) -> Result<Report> {
    let v = enumerate_vertices(h)?;
    let bounding: Vec<String> = bounding_hyperplanes(&v).iter().map(|l| l.to_string()).collect();
    let json = json!({
        "system": rs.id.to_string(),
        "halfspaces": h.halfspaces,
        "vertices": vertex_json(rs, &v),
        "bounding_hyperplanes": bounding,
        "extra": extra,
    });
    let mut r = Report::new(format!("{title}: {} vertices", v.len()), json).columns(&["vertex", "α-coordinates", "Kac"]);
    vertex_rows(&mut r, rs, &v);
    r.note(format!("bounding hyperplanes: {}", bounding.join(", ")));
    Ok(r)
}

pub fn kp(rs: &RootSystem) -> Result<Report> {
    polytope_report(rs, format!("𝒦({})", rs.id), &komrakov_premet(rs), Value::Null)
}

pub fn fund_polytope(rs: &RootSystem, slice: &SliceOverride) -> Result<Report> {
    let roots = slice_roots(rs, slice)?;
    let h = fundamental_polytope_with(rs, &roots)?;
    let extra = json!({ "slicing_roots": roots });
    let mut r = polytope_report(rs, format!("ℒ({})", rs.id), &h, extra)?;
    for b in &roots {
        r.note(format!("slice: ({}, x) ≥ 0, involution {}", root_string(b), b.involution.cycles()));
    }
    Ok(r)
}

pub fn dirichlet(rs: &RootSystem) -> Result<Report> {
    let h = dirichlet_domain(rs);
    let v = enumerate_vertices(&h)?;
    let a = volume(&enumerate_vertices(&alcove(rs))?)?;
    let d = volume(&v)?;
    let order = fundamental_group(rs).order();
    let ratio = a / d.clone();
    let extra = json!({ "volume": d.to_string(), "alcove_over_domain": ratio.to_string(), "omega_order": order });
    let mut r = polytope_report(rs, format!("𝒟(Ω) for {}", rs.id), &h, extra)?;
    r.note(format!("vol 𝒜 / vol 𝒟 = {ratio}, |Ω| = {order}"));
    r.failed = ratio != alcove::Rational::from_int(order as i64);
    Ok(r)
}

pub fn volume_cmd(rs: &RootSystem, which: PolytopeChoice, slice: &SliceOverride) -> Result<Report> {
    let v = volume(&enumerate_vertices(&polytope(rs, which, slice)?)?)?;
    let a = volume(&enumerate_vertices(&alcove(rs))?)?;
    let ratio = a / v.clone();
    let json = json!({ "system": rs.id.to_string(), "volume": v.to_string(), "alcove_over_volume": ratio.to_string() });
    let mut r = Report::new(format!("volume of {which:?} for {}", rs.id), json).columns(&["volume", "vol 𝒜 / volume"]);
    r.row(vec![v.to_string(), ratio.to_string()]);
    Ok(r)
}

fn default_fund_choice(rs: &RootSystem) -> (PolytopeChoice, GroupChoice) {
    if slicing_roots(rs).is_empty() {
        (PolytopeChoice::Kp, GroupChoice::Omega)
    } else {
        (PolytopeChoice::Fund, GroupChoice::Aut)
    }
}

pub fn check_fund(
    rs: &RootSystem,
    p: Option<PolytopeChoice>,
    g: Option<GroupChoice>,
    slice: &SliceOverride,
) -> Result<Report> {
    let (dp, dg) = default_fund_choice(rs);
    let (p, g) = (p.unwrap_or(dp), g.unwrap_or(dg));
    if matches!(g, GroupChoice::Walls | GroupChoice::Extended) {
        return Err(Error::Parse("check-fund needs a finite group: --group omega or aut".into()));
    }
    let report = is_fundamental_domain(&polytope(rs, p, slice)?, &group(rs, g))?;
    // claims: 𝒦 for Ω and ℒ for Aut(𝒜)
    let claimed = matches!((p, g), (PolytopeChoice::Kp, GroupChoice::Omega) | (PolytopeChoice::Fund, GroupChoice::Aut))
        && slice.is_empty();
    let json = serde_json::to_value(&report).expect("serializes");
    let mut r = Report::new(
        format!("{p:?} as fundamental domain for {g:?} on 𝒜 ({}): {}", rs.id, report.verdict),
        json,
    )
    .columns(&["|G|", "disjoint", "covers", "volume", "ambient volume"]);
    r.row(vec![
        report.group_order.to_string(),
        yes_no(report.disjoint),
        yes_no(report.covers),
        report.volume.to_string(),
        report.ambient_volume.to_string(),
    ]);
    for o in &report.overlaps {
        r.note(format!("overlap with {} at {} Kac {}", o.name, point(&o.point), kac(rs, &o.point)));
    }
    r.failed = claimed && !report.verdict;
    Ok(r)
}

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// The verdict asserted for a (group, polytope) pair, when one is known.
fn expected_stratification(rs: &RootSystem, g: GroupChoice, p: PolytopeChoice) -> Option<bool> {
    let a_prime = (rs.id.family == Family::A).then(|| is_prime(rs.rank() + 1));
    match (g, p) {
        (GroupChoice::Walls, PolytopeChoice::Alcove) => Some(true),
        (GroupChoice::Omega | GroupChoice::Extended, PolytopeChoice::Kp) => a_prime,
        (GroupChoice::Aut, PolytopeChoice::Fund) if rs.id.family == Family::A && rs.rank() == 3 => Some(false),
        _ => None,
    }
}

pub fn stratification(
    rs: &RootSystem,
    g: GroupChoice,
    p: PolytopeChoice,
    slice: &SliceOverride,
) -> Result<(StratificationReport, Option<bool>)> {
    let expected = if slice.is_empty() { expected_stratification(rs, g, p) } else { None };
    let claim = match expected {
        Some(v) => format!("{g:?} on {p:?} stratified: {v}"),
        None => String::new(),
    };
    let report = stratified_centralizers(&group(rs, g), &polytope(rs, p, slice)?, &claim, face_cap_from_env())?;
    Ok((report, expected))
}

pub fn check_stratified(
    rs: &RootSystem,
    g: GroupChoice,
    p: PolytopeChoice,
    slice: &SliceOverride,
) -> Result<Report> {
    let (report, expected) = stratification(rs, g, p, slice)?;
    let json = serde_json::to_value(&report).expect("serializes");
    let mut r = Report::new(
        format!("stratified centralizers of {g:?} on {p:?} ({}): {}", rs.id, report.verdict),
        json,
    )
    .columns(&["element", "face", "dim", "fixed point", "Kac", "moved point"]);
    for w in &report.witnesses {
        r.row(vec![
            w.element_name.clone(),
            w.facets.join(" ∩ "),
            w.face_dim.to_string(),
            point(&w.fixed_point),
            kac(rs, &w.fixed_point),
            point(&w.moved_point),
        ]);
    }
    r.note(format!("faces checked: {}", report.faces_checked));
    if let Some(e) = expected {
        r.note(format!("expected verdict: {e}"));
        r.failed = e != report.verdict;
    }
    Ok(r)
}

pub fn table_a(rs: &RootSystem) -> Result<Report> {
    let aut = alcove_automorphism_group(rs);
    let omega = fundamental_group(rs);
    let aut_d = diagram_automorphisms(&build_diagram(rs, false));
    let recipes: BTreeMap<String, String> = coxeter_generator_recipe(rs)
        .into_iter()
        .map(|(name, word)| (name, word.iter().map(factor_string).collect::<Vec<_>>().join("")))
        .collect();
    let gens: Vec<usize> = aut.generators.iter().map(|g| g.element).collect();
    let mut products = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            let o = aut.table.element_order(aut.table.mul(gens[a], gens[b]));
            products.push(format!("{}{}: {o}", aut.generators[a].name, aut.generators[b].name));
        }
    }
    let mut rows_json = Vec::new();
    let mut r = Report::new(
        format!(
            "{}: |Ω| = {} ({}), |Aut(D)| = {}, Aut(𝒜) ≅ {} of order {}",
            rs.id,
            omega.order(),
            omega.kind,
            aut_d.len(),
            aut.kind,
            aut.order()
        ),
        Value::Null,
    )
    .columns(&["generator", "recipe", "affine node permutation", "vertex permutation"]);
    for g in &aut.generators {
        let e = &aut.elements[g.element];
        let node_perm = pi(rs, e).map(|p| p.cycles()).unwrap_or_default();
        let vperm = vertex_permutation(rs, e).map(|p| cycle_notation(&p)).unwrap_or_default();
        let recipe = recipes.get(&g.name).cloned().unwrap_or_default();
        rows_json.push(json!({ "name": g.name, "recipe": recipe, "node_permutation": node_perm, "vertex_permutation": vperm }));
        r.row(vec![g.name.clone(), recipe, node_perm, vperm]);
    }
    if !products.is_empty() {
        r.note(format!("orders of products: {}", products.join(", ")));
    }
    r.json = json!({
        "system": rs.id.to_string(),
        "omega_order": omega.order(),
        "omega_kind": omega.kind.to_string(),
        "diagram_automorphisms": aut_d.len(),
        "alcove_automorphisms": aut.order(),
        "alcove_automorphism_kind": aut.kind.to_string(),
        "generators": rows_json,
        "product_orders": products,
    });
    Ok(r)
}

pub fn table_b(rs: &RootSystem, slice: &SliceOverride) -> Result<Report> {
    let roots = slice_roots(rs, slice)?;
    let l = enumerate_vertices(&fundamental_polytope_with(rs, &roots)?)?;
    let k = enumerate_vertices(&komrakov_premet(rs))?;
    let bounding: Vec<String> = bounding_hyperplanes(&l).iter().map(|b| b.to_string()).collect();
    let dropped: Vec<_> = k.vertices.iter().filter(|x| !l.contains_vertex(x)).cloned().collect();
    let new: Vec<_> = l.vertices.iter().filter(|x| !k.contains_vertex(x)).cloned().collect();
    let formula = (rs.id.family == Family::A && rs.rank() >= 2).then(|| vertex_count_formula_a(rs.rank() as u32));
    let json = json!({
        "system": rs.id.to_string(),
        "slicing_roots": roots.iter().map(root_string).collect::<Vec<_>>(),
        "vertices": vertex_json(rs, &l),
        "kp_vertices_dropped": points_json(&dropped),
        "vertices_not_in_kp": points_json(&new),
        "bounding_hyperplanes": bounding,
        "vertex_count_formula": formula,
    });
    let mut r = Report::new(
        format!("ℒ({}): {} vertices ({} in 𝒦)", rs.id, l.len(), k.len()),
        json,
    )
    .columns(&["vertex", "α-coordinates", "Kac"]);
    vertex_rows(&mut r, rs, &l);
    for b in &roots {
        r.note(format!("v0 = {}", root_string(b)));
    }
    r.note(format!("bounding hyperplanes: {}", bounding.join(", ")));
    r.note(format!("vertices of 𝒦 dropped: {}", dropped.iter().map(point).collect::<Vec<_>>().join(", ")));
    if !new.is_empty() {
        r.note(format!("vertices not in vert 𝒦: {}", new.iter().map(point).collect::<Vec<_>>().join(", ")));
    }
    if let Some(f) = formula {
        r.note(format!("count formula: {f}"));
        r.failed = slice.is_empty() && f as usize != l.len();
    }
    Ok(r)
}

/// Which verdict columns a sweep computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepChecks {
    All,
    Fund,
    Strat,
    None,
}

const SWEEP_KEYS: [&str; 9] = [
    "type",
    "omega_order",
    "diagram_automorphisms",
    "alcove_automorphisms",
    "kp_vertices",
    "fundamental_polytope_vertices",
    "kp_fundamental_for_omega",
    "fundamental_polytope_fundamental_for_aut",
    "omega_stratified_on_kp",
];

fn verdict_cell(v: Result<bool>) -> Result<String> {
    match v {
        Ok(b) => Ok(b.to_string()),
        Err(Error::FaceCapExceeded { .. }) => Ok("skipped(cap)".into()),
        Err(e) => Err(e),
    }
}

pub fn sweep(family: Family, ranks: std::ops::RangeInclusive<usize>, checks: SweepChecks) -> Result<Report> {
    let fund = matches!(checks, SweepChecks::All | SweepChecks::Fund);
    let strat = matches!(checks, SweepChecks::All | SweepChecks::Strat);
    let mut r = Report::new(format!("sweep of type {family}"), Value::Null).columns(&[
        "type",
        "|Ω|",
        "|Aut(D)|",
        "|Aut(𝒜)|",
        "|vert 𝒦|",
        "|vert ℒ|",
        "𝒦 fund Ω",
        "ℒ fund Aut(𝒜)",
        "Ω strat 𝒦",
    ]);
    let mut docs = Vec::new();
    let mut failed = false;
    for n in ranks {
        let id = RootSystemId::new(family, n)?;
        let rs = RootSystem::build(id);
        let omega = fundamental_group(&rs);
        let aut_d = diagram_automorphisms(&build_diagram(&rs, false)).len();
        let aut = alcove_automorphism_group(&rs).order();
        let kp = komrakov_premet(&rs);
        let kv = enumerate_vertices(&kp)?.len();
        let roots = slicing_roots(&rs);
        let l = if roots.is_empty() { None } else { Some(fundamental_polytope_with(&rs, &roots)?) };
        let lv = match &l {
            Some(h) => enumerate_vertices(h)?.len().to_string(),
            None => "-".into(),
        };
        let fund_k = if fund {
            verdict_cell(is_fundamental_domain(&kp, &GroupAction::omega(&rs)).map(|x| x.verdict))?
        } else {
            "-".into()
        };
        let fund_l = match (&l, fund) {
            (Some(h), true) => verdict_cell(is_fundamental_domain(h, &GroupAction::alcove_automorphisms(&rs)).map(|x| x.verdict))?,
            _ => "-".into(),
        };
        let strat_cell = if strat {
            let res = stratification(&rs, GroupChoice::Omega, PolytopeChoice::Kp, &SliceOverride::default());
            if let Ok((rep, Some(e))) = &res {
                failed |= rep.verdict != *e;
            }
            verdict_cell(res.map(|(rep, _)| rep.verdict))?
        } else {
            "-".into()
        };
        failed |= fund_k == "false" || fund_l == "false";
        let cells = vec![
            id.to_string(),
            omega.order().to_string(),
            aut_d.to_string(),
            aut.to_string(),
            kv.to_string(),
            lv,
            fund_k,
            fund_l,
            strat_cell,
        ];
        docs.push(Value::Object(
            SWEEP_KEYS.iter().map(|k| k.to_string()).zip(cells.iter().map(|c| json!(c))).collect(),
        ));
        r.row(cells);
    }
    r.json = Value::Array(docs);
    r.failed = failed;
    Ok(r)
}
