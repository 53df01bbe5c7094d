//! Deterministic artifact rendering: W-graph JSON, Graphviz DOT, ideal-table
//! JSON, c-expansion tables, verification reports, and the golden comparison
//! against the checked-in 21-line expansion fixture.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::CoxeterGroup;
use crate::ideal::{Family, IdealTable, ParabolicVariant};
use crate::laurent::{coeff_json, Coeff, LaurentPoly};
use crate::tableaux::{word_of, Partition, StandardTableau};
use crate::verify::Report;
use crate::wgraph::{compute_q_table, QTable, WGraphData};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("golden mismatch: {0}")]
    GoldenMismatch(String),
    #[error("malformed fixture or document: {0}")]
    Malformed(String),
}

/// The checked-in expansion table for the shape (3,3,1): 21 tableaux in the
/// reference order and, for each, the coefficients of the lower c-terms in
/// its expansion.
pub const GOLDEN_SPECHT_331: &str = include_str!("../fixtures/specht_331_cexpansions.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: u32,
    pub word: Vec<usize>,
    pub tau: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: u32,
    pub v: u32,
    pub mu: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct MetaDoc {
    pub family: String,
    pub group: String,
    pub dim: usize,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WGraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub meta: MetaDoc,
}

#[allow(clippy::type_complexity)]
fn family_meta(family: &Family) -> (String, Option<Vec<usize>>, Option<String>, Option<Vec<usize>>) {
    match family {
        Family::Regular => ("regular".into(), None, None, None),
        Family::Parabolic { variant, .. } => (
            "parabolic".into(),
            None,
            Some(
                match variant {
                    ParabolicVariant::Psi => "psi",
                    ParabolicVariant::Phi => "phi",
                }
                .into(),
            ),
            None,
        ),
        Family::Specht { lambda } => ("specht".into(), Some(lambda.clone()), None, None),
        Family::OneDim { .. } => ("onedim".into(), None, None, None),
        Family::Induced { k, inner } => {
            let (inner_name, lambda, variant, _) = family_meta(inner);
            (
                format!("induced({inner_name})"),
                lambda,
                variant,
                Some(k.indices()),
            )
        }
        Family::Custom => ("custom".into(), None, None, None),
    }
}

fn group_name(spec: &crate::coxeter::CoxeterSpec) -> String {
    match spec {
        crate::coxeter::CoxeterSpec::TypeA { n } => format!("A{} (S{n})", n - 1),
        crate::coxeter::CoxeterSpec::Dihedral { m } => format!("I2({m})"),
    }
}

/// Assembles the exportable W-graph document: 1-based vertex ids in table
/// order, sorted undirected edges, family metadata.
pub fn wgraph_doc<G: CoxeterGroup, C: Coeff>(
    table: &IdealTable<G>,
    wg: &WGraphData<C>,
) -> WGraphDoc {
    let group = table.group();
    let vertices = (0..wg.dim())
        .map(|j| VertexDoc {
            id: j as u32 + 1,
            word: group.element_repr(&table.elements()[j]),
            tau: wg.tau[j].indices(),
        })
        .collect();
    let mut edges: Vec<EdgeDoc> = wg
        .mu
        .edges()
        .map(|(i, j, m)| EdgeDoc {
            u: i as u32 + 1,
            v: j as u32 + 1,
            mu: coeff_json(m),
        })
        .collect();
    edges.sort_by_key(|e| (e.u, e.v));
    let (family, lambda, variant, k) = family_meta(table.family());
    WGraphDoc {
        vertices,
        edges,
        meta: MetaDoc {
            family,
            group: group_name(&group.spec()),
            dim: wg.dim(),
            j: table.core().j_set().indices(),
            lambda,
            variant,
            k,
        },
    }
}

pub fn to_json(doc: &WGraphDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

pub fn parse_wgraph_json(text: &str) -> Result<WGraphDoc, ExportError> {
    serde_json::from_str(text).map_err(|e| ExportError::Malformed(e.to_string()))
}

/// Graphviz rendering: vertex label "id:{tau}", undirected edges labelled by
/// mu, everything in sorted order.
pub fn to_dot(doc: &WGraphDoc) -> String {
    let mut out = String::from("graph wgraph {\n");
    for v in &doc.vertices {
        let tau = v
            .tau
            .iter()
            .map(|s| format!("s{s}"))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!("  v{} [label=\"{}:{{{}}}\"];\n", v.id, v.id, tau));
    }
    for e in &doc.edges {
        let mu = match &e.mu {
            serde_json::Value::Number(n) => n.to_string(),
            other => other.to_string(),
        };
        out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", e.u, e.v, mu));
    }
    out.push_str("}\n");
    out
}

/// Ideal-table document: one-line words (or reduced words), J, and the tab
/// array in the signed integer encoding (k for strong cells with the
/// partner's 1-based index, +j for weak ascents, -j for weak descents).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub group: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub gens: Vec<usize>,
    pub elements: Vec<Vec<usize>>,
    pub lengths: Vec<u32>,
    /// tab[j][s-1], rows indexed by element.
    pub tab: Vec<Vec<i32>>,
}

pub fn ideal_doc<G: CoxeterGroup>(table: &IdealTable<G>) -> IdealDoc {
    let core = table.core();
    let rank = core.rank();
    IdealDoc {
        group: group_name(&table.group().spec()),
        j: core.j_set().indices(),
        gens: core.gens().indices(),
        elements: table
            .elements()
            .iter()
            .map(|e| table.group().element_repr(e))
            .collect(),
        lengths: core.lengths().to_vec(),
        tab: (0..core.dim())
            .map(|j| (1..=rank).map(|s| core.raw_tab(j, s)).collect())
            .collect(),
    }
}

pub fn ideal_json<G: CoxeterGroup>(table: &IdealTable<G>) -> String {
    let mut s = serde_json::to_string_pretty(&ideal_doc(table)).expect("serializable");
    s.push('\n');
    s
}

/// Tableau JSON: {"shape":[3,3,1],"rows":[[1,4,6],[2,5,7],[3]]}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableauDoc {
    pub shape: Vec<usize>,
    pub rows: Vec<Vec<u8>>,
}

pub fn tableau_doc(t: &StandardTableau) -> TableauDoc {
    TableauDoc {
        shape: t.shape().parts().to_vec(),
        rows: t.rows().to_vec(),
    }
}

pub fn tableau_json(t: &StandardTableau) -> String {
    serde_json::to_string(&tableau_doc(t)).expect("serializable")
}

/// Verification report JSON: {"checks":[{"name":..,"status":"pass"|"fail"},..]}.
pub fn report_json(report: &Report) -> String {
    #[derive(Serialize)]
    struct CheckDoc<'a> {
        name: &'a str,
        status: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        detail: Option<&'a str>,
    }
    #[derive(Serialize)]
    struct ReportDoc<'a> {
        checks: Vec<CheckDoc<'a>>,
    }
    let doc = ReportDoc {
        checks: report
            .checks
            .iter()
            .map(|c| CheckDoc {
                name: &c.name,
                status: if c.pass { "pass" } else { "fail" },
                detail: c.detail.as_deref(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn poly_term<C: Coeff>(c: &C, e: i32) -> String {
    let one = c.to_string() == "1";
    match (e, one) {
        (0, _) => c.to_string(),
        (1, true) => "q".into(),
        (1, false) => format!("{c}q"),
        (_, true) => format!("q^{e}"),
        (_, false) => format!("{c}q^{e}"),
    }
}

/// Human-readable c-expansion lines "c_j = b_j - q*... c_i - ..." derived
/// from the q-table: the coefficient of c_i is q * q_{i,j}.
pub fn expansion_lines<C: Coeff>(q: &QTable<C>) -> Vec<String> {
    (0..q.dim())
        .map(|k| {
            let mut line = format!("c{} = b{}", k + 1, k + 1);
            for (j, poly) in q.col(k).iter().rev() {
                let coeff = poly.shifted(1);
                let terms = coeff.terms();
                let rendered = if terms.len() == 1 && !terms[0].1.is_negative() {
                    poly_term(&terms[0].1, terms[0].0)
                } else {
                    format!("({coeff})")
                };
                line.push_str(&format!(" - {rendered}*c{}", j + 1));
            }
            line
        })
        .collect()
}

#[derive(Deserialize)]
#[allow(clippy::type_complexity)]
struct GoldenFixture {
    lambda: Vec<usize>,
    tableaux: Vec<Vec<Vec<u8>>>,
    expansions: Vec<(usize, Vec<(usize, Vec<(i32, i64)>)>)>,
}

/// Compares the engine's q-table for the fixture's shape against the
/// checked-in expansion lines, matching vertices by tableau content. The
/// fixture stores, per line j, the coefficient of each c_i (which must equal
/// q * q_{i,j} exactly).
pub fn golden_compare_specht<C: Coeff>(fixture_json: &str) -> Result<(), ExportError> {
    let fixture: GoldenFixture = serde_json::from_str(fixture_json)
        .map_err(|e| ExportError::Malformed(e.to_string()))?;
    let shape = Partition::new(fixture.lambda.clone())
        .map_err(|e| ExportError::Malformed(e.to_string()))?;
    let table = crate::ideal::specht_ideal(&shape);
    if fixture.tableaux.len() != table.dim() {
        return Err(ExportError::GoldenMismatch(format!(
            "fixture has {} tableaux, ideal has {} elements",
            fixture.tableaux.len(),
            table.dim()
        )));
    }
    // Paper index (1-based) -> our index, by tableau content.
    let mut ours_of: Vec<u32> = Vec::with_capacity(table.dim());
    for rows in &fixture.tableaux {
        let t = StandardTableau::new(shape.clone(), rows.clone())
            .map_err(|e| ExportError::Malformed(format!("fixture tableau invalid: {e}")))?;
        let idx = table
            .index_of(&word_of(&t))
            .ok_or_else(|| ExportError::GoldenMismatch(format!("tableau {t:?} not in ideal")))?;
        ours_of.push(idx);
    }
    let q = compute_q_table::<C>(table.core())
        .map_err(|e| ExportError::Malformed(format!("engine failure: {e}")))?;
    for (paper_j, terms) in &fixture.expansions {
        let our_j = ours_of[paper_j - 1] as usize;
        let mut expected: Vec<(u32, LaurentPoly<C>)> = terms
            .iter()
            .map(|(paper_i, pairs)| {
                let poly = LaurentPoly::from_terms(
                    pairs.iter().map(|&(e, c)| (e, C::from(c as i32))),
                );
                (ours_of[paper_i - 1], poly)
            })
            .collect();
        expected.sort_by_key(|&(i, _)| i);
        let actual: Vec<(u32, LaurentPoly<C>)> = q
            .col(our_j)
            .iter()
            .map(|(i, poly)| (*i, poly.shifted(1)))
            .collect();
        if expected != actual {
            return Err(ExportError::GoldenMismatch(format!(
                "line c_{paper_j}: expected {expected:?}, computed {actual:?}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{GenSet, TypeA};
    use crate::ideal::{one_dim_ideal, regular_ideal, specht_ideal};
    use crate::wgraph::build_wgraph;

    #[test]
    fn golden_331_matches() {
        golden_compare_specht::<i64>(GOLDEN_SPECHT_331).unwrap();
        golden_compare_specht::<num_bigint::BigInt>(GOLDEN_SPECHT_331).unwrap();
    }

    #[test]
    fn golden_rejects_a_perturbed_fixture() {
        let tampered = GOLDEN_SPECHT_331.replacen("[[2, 1]]", "[[2, 2]]", 1);
        assert!(matches!(
            golden_compare_specht::<i64>(&tampered),
            Err(ExportError::GoldenMismatch(_))
        ));
    }

    #[test]
    fn dot_single_vertex_is_three_lines() {
        let t = one_dim_ideal(&TypeA::new(3), GenSet::empty(), GenSet::empty()).unwrap();
        let wg = build_wgraph::<i64>(t.core()).unwrap();
        let dot = to_dot(&wgraph_doc(&t, &wg));
        assert_eq!(dot.lines().count(), 3);
        assert_eq!(
            dot,
            "graph wgraph {\n  v1 [label=\"1:{}\"];\n}\n"
        );
    }

    #[test]
    fn json_round_trip_is_identity() {
        let t = specht_ideal(&Partition::new(vec![2, 2]).unwrap());
        let wg = build_wgraph::<i64>(t.core()).unwrap();
        let doc = wgraph_doc(&t, &wg);
        let text = to_json(&doc);
        let parsed = parse_wgraph_json(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(to_json(&parsed), text);
    }

    #[test]
    fn expansion_lines_read_like_the_reference() {
        let t = specht_ideal(&Partition::new(vec![2, 1]).unwrap());
        let q = compute_q_table::<i64>(t.core()).unwrap();
        let lines = expansion_lines(&q);
        assert_eq!(lines, vec!["c1 = b1".to_string(), "c2 = b2 - q*c1".to_string()]);
    }

    #[test]
    fn ideal_doc_uses_signed_tab_encoding() {
        let t = regular_ideal(&TypeA::new(2));
        let doc = ideal_doc(&t);
        assert_eq!(doc.elements, vec![vec![1, 2], vec![2, 1]]);
        // s1 is a strong ascent of the identity with partner 2 (1-based) and
        // a strong descent of s1 with partner 1.
        assert_eq!(doc.tab, vec![vec![2], vec![1]]);
        let one = one_dim_ideal(&TypeA::new(3), GenSet::singleton(1), GenSet::singleton(2));
        // s1, s2 conjugate: skip; use commuting pair in S4.
        assert!(one.is_err());
        let one = one_dim_ideal(&TypeA::new(4), GenSet::singleton(1), GenSet::singleton(3)).unwrap();
        let doc = ideal_doc(&one);
        assert_eq!(doc.tab, vec![vec![-1, 0, 1]]);
    }

    #[test]
    fn tableau_json_format() {
        let shape = Partition::new(vec![3, 3, 1]).unwrap();
        let t = crate::tableaux::tab_lambda(&shape);
        assert_eq!(
            tableau_json(&t),
            r#"{"shape":[3,3,1],"rows":[[1,4,6],[2,5,7],[3]]}"#
        );
        let parsed: TableauDoc = serde_json::from_str(&tableau_json(&t)).unwrap();
        assert_eq!(parsed, tableau_doc(&t));
    }

    #[test]
    fn report_json_shape() {
        let mut r = Report::default();
        r.ok("braid(s1,s2)");
        r.fail("quadratic(s1)", "details");
        let text = report_json(&r);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][1]["status"], "fail");
        assert_eq!(v["checks"][0]["name"], "braid(s1,s2)");
    }
}
