//! `mdim verify`: closed forms against the LP and branch-and-bound solvers.

use clap::ValueEnum;
use mdim_core::families::{
    closed_form_fkdim, closed_form_kappa, closed_form_kdim, generate, random_tree,
};
use mdim_core::frac::fractional_k_dimension_with;
use mdim_core::integer::k_metric_dimension_with;
use mdim_core::rational::{int, ratio, Rational};
use mdim_core::tree::{analyze_tree, fkdim_tree, kappa_tree};
use mdim_core::{FamilySpec, Graph, PairSystem};
use rayon::prelude::*;

use crate::{emit, CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Paths,
    Cycles,
    Wheels,
    Petersen,
    Bouquets,
    Multipartite,
    Grids,
    Spiders,
    Trees,
    Remark,
    Blowup,
    All,
}

pub struct Limits {
    pub max_n: usize,
    pub trees: usize,
    pub s: usize,
}

enum Subject {
    Family(FamilySpec),
    Tree { label: String, graph: Graph },
}

enum Quantity {
    Kappa,
    Fkdim(Rational),
    Kdim(usize),
}

struct Case {
    subject: Subject,
    quantities: Vec<Quantity>,
}

struct Row {
    instance: String,
    quantity: &'static str,
    k: String,
    formula: String,
    solved: String,
}

impl Row {
    fn matches(&self) -> bool {
        self.formula == self.solved
    }
}

fn standard_ks(kappa: usize) -> Vec<Rational> {
    let mut ks = vec![int(1), ratio(kappa as i64, 2), int(kappa as i64)];
    ks.retain(|k| *k >= int(1));
    ks.sort();
    ks.dedup();
    ks
}

fn fk(ks: impl IntoIterator<Item = Rational>) -> Vec<Quantity> {
    std::iter::once(Quantity::Kappa).chain(ks.into_iter().map(Quantity::Fkdim)).collect()
}

fn spec(text: &str) -> FamilySpec {
    text.parse().unwrap_or_else(|e| panic!("built-in spec {text}: {e}"))
}

fn family_case(text: &str, extra: impl FnOnce(usize) -> Vec<Rational>) -> Case {
    let spec = spec(text);
    let kappa = closed_form_kappa(&spec).unwrap_or(2);
    Case { subject: Subject::Family(spec), quantities: fk(extra(kappa)) }
}

fn cases(scope: Scope, limits: &Limits) -> Vec<Case> {
    let all = scope == Scope::All;
    let want = |s: Scope| all || scope == s;
    let max_n = limits.max_n;
    let mut out = Vec::new();
    if want(Scope::Paths) {
        for n in 2..=max_n {
            out.push(family_case(&format!("path:{n}"), |kappa| {
                (2..=2 * kappa as i64).map(|h| ratio(h, 2)).collect()
            }));
        }
    }
    if want(Scope::Cycles) {
        for n in 3..=max_n {
            out.push(family_case(&format!("cycle:{n}"), standard_ks));
        }
    }
    if want(Scope::Wheels) {
        for n in 5..=max_n {
            out.push(family_case(&format!("wheel:{n}"), |kappa| {
                let ks = [int(1), ratio(3, 2), int(2), ratio(5, 2), int(3), int(4)];
                ks.into_iter().filter(|k| *k <= int(kappa as i64)).collect()
            }));
        }
    }
    if want(Scope::Petersen) {
        out.push(family_case("petersen", |_| vec![int(1), int(2), ratio(7, 2), int(6)]));
    }
    if want(Scope::Bouquets) {
        for lens in ["3,3", "3,4", "3,5", "4,4", "4,6", "3,3,3", "5,5,7"] {
            out.push(family_case(&format!("bouquet:{lens}"), standard_ks));
        }
    }
    if want(Scope::Multipartite) {
        for parts in ["1,1", "1,3", "2,3", "1,1,2", "1,3,3", "2,2,3", "3,4", "1,1,1,1"] {
            out.push(family_case(&format!("multipartite:{parts}"), |_| {
                vec![int(1), ratio(3, 2), int(2)]
            }));
        }
    }
    if want(Scope::Grids) {
        for s in 2..=max_n / 2 {
            for t in s..=max_n / s {
                let mut case = family_case(&format!("grid:{s}x{t}"), standard_ks);
                if s + t <= 7 {
                    case.quantities.extend((1..=s + t - 2).map(Quantity::Kdim));
                }
                out.push(case);
            }
        }
    }
    if want(Scope::Spiders) {
        for legs in ["1,1,1", "2,2,2", "1,3,3,3", "2,3,4", "1,2,5", "3,3,3,3", "1,1,4", "2,3,5,5"] {
            let text = format!("spider:{legs}");
            let d1: i64 = legs.split(',').map(|l| l.parse::<i64>().unwrap()).min().unwrap();
            out.push(family_case(&text, |kappa| {
                let mut ks = standard_ks(kappa);
                ks.push(int(2 * d1));
                ks.retain(|k| *k <= int(kappa as i64));
                ks.sort();
                ks.dedup();
                ks
            }));
        }
    }
    if want(Scope::Trees) {
        let top = max_n.max(5);
        for i in 0..limits.trees {
            let n = 5 + i % (top - 4);
            let seed = i as u64 + 1;
            out.push(Case {
                subject: Subject::Tree {
                    label: format!("tree n={n} seed={seed}"),
                    graph: random_tree(n, seed),
                },
                quantities: Vec::new(),
            });
        }
    }
    if want(Scope::Remark) {
        let s = limits.s;
        for base in ["path:2", "path:3"] {
            let mut case = family_case(&format!("remark:{base},s={s}"), |kappa| {
                (1..=kappa as i64).map(int).collect()
            });
            if base == "path:2" {
                case.quantities.extend((1..=2 * s).map(Quantity::Kdim));
            }
            out.push(case);
        }
    }
    if want(Scope::Blowup) {
        for groups in [
            "path:2,sizes=2E,3E",
            "path:3,sizes=2K,2E,3K",
            "cycle:4,sizes=2E,2E,2K,2K",
            "petersen,sizes=2K,2E,2K,2E,2K,2E,2K,2E,2K,2E",
        ] {
            out.push(family_case(&format!("blowup:{groups}"), |_| {
                vec![int(1), ratio(3, 2), int(2)]
            }));
        }
    }
    out.retain(|case| match &case.subject {
        Subject::Family(spec) => spec.vertex_count() <= max_n,
        Subject::Tree { graph, .. } => graph.vertex_count() <= max_n,
    });
    out
}

fn evaluate(case: &Case) -> CliResult<Vec<Row>> {
    let mut rows = Vec::new();
    match &case.subject {
        Subject::Family(spec) => {
            let instance = spec.to_string();
            let ps = PairSystem::new(&generate(spec)?)?;
            for q in &case.quantities {
                let row = match q {
                    Quantity::Kappa => Row {
                        instance: instance.clone(),
                        quantity: "kappa",
                        k: "-".into(),
                        formula: match spec {
                            FamilySpec::Blowup { .. } => 2,
                            _ => closed_form_kappa(spec)?,
                        }
                        .to_string(),
                        solved: ps.kappa().to_string(),
                    },
                    Quantity::Fkdim(k) => Row {
                        instance: instance.clone(),
                        quantity: "dim_f^k",
                        k: k.to_string(),
                        formula: closed_form_fkdim(spec, k)?.to_string(),
                        solved: fractional_k_dimension_with(&ps, k)?.value.to_string(),
                    },
                    Quantity::Kdim(k) => Row {
                        instance: instance.clone(),
                        quantity: "dim^k",
                        k: k.to_string(),
                        formula: closed_form_kdim(spec, *k)?.to_string(),
                        solved: k_metric_dimension_with(&ps, *k)?.value.to_string(),
                    },
                };
                rows.push(row);
            }
        }
        Subject::Tree { label, graph } => {
            let ps = PairSystem::new(graph)?;
            let kappa = ps.kappa();
            let path = graph.is_path().then(|| FamilySpec::Path(graph.vertex_count()));
            let analysis = if path.is_none() { Some(analyze_tree(graph)?) } else { None };
            let formula_kappa = match (&path, &analysis) {
                (Some(p), _) => closed_form_kappa(p)?,
                (None, Some(ta)) => kappa_tree(ta),
                _ => unreachable!(),
            };
            rows.push(Row {
                instance: label.clone(),
                quantity: "kappa",
                k: "-".into(),
                formula: formula_kappa.to_string(),
                solved: kappa.to_string(),
            });
            for k in standard_ks(formula_kappa.min(kappa)) {
                let formula = match (&path, &analysis) {
                    (Some(p), _) => closed_form_fkdim(p, &k)?,
                    (None, Some(ta)) => fkdim_tree(ta, &k)?,
                    _ => unreachable!(),
                };
                rows.push(Row {
                    instance: label.clone(),
                    quantity: "dim_f^k",
                    k: k.to_string(),
                    formula: formula.to_string(),
                    solved: fractional_k_dimension_with(&ps, &k)?.value.to_string(),
                });
            }
        }
    }
    Ok(rows)
}

pub fn run(scope: Scope, limits: &Limits) -> CliResult<()> {
    let cases = cases(scope, limits);
    let rows: Vec<Vec<Row>> = cases.par_iter().map(evaluate).collect::<CliResult<_>>()?;
    let rows: Vec<Row> = rows.into_iter().flatten().collect();
    let mut table = String::from("instance\tquantity\tk\tformula\tsolved\tmatch\n");
    for r in &rows {
        let flag = if r.matches() { "yes" } else { "NO" };
        table.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{flag}\n",
            r.instance, r.quantity, r.k, r.formula, r.solved
        ));
    }
    let mismatches = rows.iter().filter(|r| !r.matches()).count();
    table.push_str(&format!("{} checks, {} mismatches\n", rows.len(), mismatches));
    emit(&table)?;
    match rows.iter().find(|r| !r.matches()) {
        Some(r) => Err(CliError::Mismatch(format!(
            "{} {} at k={}: formula {}, solved {}",
            r.instance, r.quantity, r.k, r.formula, r.solved
        ))),
        None => Ok(()),
    }
}
