//! Full verdict reports for one parameter point, with text and JSON forms.
//!
//! The cohomology module of the level set splits as the cokernel plus the
//! kernel of the connecting matrix; the report carries both presentations,
//! the dimension counts, the engine's syzygy order, and the maximal-order
//! classification, together with a consistency flag tying them together.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::homology::{is_free, syzygy_order, SyzygyOrder};
use crate::module::{
    generic_rank, kernel, FreeModule, ModuleMap, Presentation,
};
use crate::subset::SubsetIndex;

use super::{
    chambers, critical_values, format_rational, long_short_sets, parse_rational, Chamber,
    ChainSpaceError, ChainSpaceParams, IotaMatrix, LengthVector,
};

/// Kernel and cokernel of the connecting matrix, and their direct sum: the
/// presentation of the full cohomology module over `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyParts {
    pub ker: Presentation,
    pub coker: Presentation,
    pub combined: Presentation,
}

/// Everything the engine can say about one parameter point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyReport {
    pub params: ChainSpaceParams,
    pub long_sets: Vec<SubsetIndex>,
    pub short_sets: Vec<SubsetIndex>,
    pub critical_values: Vec<Rational64>,
    pub cr_min: Rational64,
    pub iota: IotaMatrix,
    pub rank_iota: usize,
    pub dim_h: u64,
    pub dim_h_fixed: u64,
    pub ker_pres: Presentation,
    pub coker_pres: Presentation,
    pub order: SyzygyOrder,
    pub free: bool,
    pub classification_predicted: Option<u32>,
    pub consistent: bool,
}

impl ChainSpaceParams {
    /// Kernel, cokernel, and their sum for the connecting matrix. The
    /// kernel presentation takes its generators from the syzygy computation
    /// and its relations from the second syzygies.
    pub fn cohomology(&self) -> CohomologyParts {
        let iota = self.iota();
        let ring = self.ring();
        let coker = Presentation::cokernel(iota.matrix.clone());
        let ker_gens = kernel(&iota.matrix);
        let ker = if ker_gens.is_empty() {
            Presentation::zero_module(&ring)
        } else {
            let gens_map = ModuleMap::from_generators(iota.matrix.source(), ker_gens)
                .expect("kernel elements are homogeneous");
            let gens = gens_map.source().clone();
            let second = kernel(&gens_map);
            let rels = if second.is_empty() {
                ModuleMap::zero(FreeModule::new(&ring, vec![]), gens.clone())
            } else {
                ModuleMap::from_generators(&gens, second).expect("second syzygies are homogeneous")
            };
            Presentation::new(gens, rels).expect("matching endpoints")
        };
        let combined = coker.direct_sum(&ker);
        CohomologyParts {
            ker,
            coker,
            combined,
        }
    }

    /// Total F2-dimensions of the level set and of its fixed-point set:
    /// twice the long count, and that minus twice the generic rank of the
    /// connecting matrix.
    pub fn dims(&self) -> (u64, u64) {
        let (long, _) = long_short_sets(self.ell(), self.c()).expect("params are generic");
        let rank = generic_rank(&self.iota().matrix) as u64;
        let dim_h = 2 * long.len() as u64;
        (dim_h, dim_h - 2 * rank)
    }

    /// The full verdict for this parameter point.
    pub fn full_report(&self) -> SyzygyReport {
        let (long_sets, short_sets) =
            long_short_sets(self.ell(), self.c()).expect("params are generic");
        let (critical, cr_min) = critical_values(self.ell());
        let iota = self.iota();
        let rank_iota = generic_rank(&iota.matrix);
        let dim_h = 2 * long_sets.len() as u64;
        let dim_h_fixed = dim_h - 2 * rank_iota as u64;
        let parts = self.cohomology();
        let order = syzygy_order(&parts.combined);
        let free = is_free(&parts.combined);
        let classification_predicted = self.classify_maximal();
        let consistent = classification_predicted
            .is_none_or(|k| order == SyzygyOrder::Order(k))
            && (free == (dim_h == dim_h_fixed));
        SyzygyReport {
            params: self.clone(),
            long_sets,
            short_sets,
            critical_values: critical,
            cr_min,
            iota,
            rank_iota,
            dim_h,
            dim_h_fixed,
            ker_pres: parts.ker,
            coker_pres: parts.coker,
            order,
            free,
            classification_predicted,
            consistent,
        }
    }
}

/// One row of a chamber sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub chamber: Chamber,
    pub long_count: usize,
    pub dim_h: u64,
    pub dim_h_fixed: u64,
    pub order: SyzygyOrder,
    pub free: bool,
    pub free_rank: Option<usize>,
    pub zero_module: bool,
}

/// Reports for one representative threshold per chamber.
pub fn sweep(m: u32, n: u32, ell: &LengthVector) -> Result<Vec<SweepRow>, ChainSpaceError> {
    if let Some((subset, value, clash)) = super::genericity_violation(ell, Rational64::from(0)) {
        return Err(ChainSpaceError::NonGeneric {
            subset,
            value,
            clash,
        });
    }
    let mut rows = Vec::new();
    for chamber in chambers(ell) {
        let params = ChainSpaceParams::new(m, n, ell.clone(), chamber.representative)?;
        let report = params.full_report();
        let free_rank = report.free.then(|| {
            crate::module::minimize_presentation(&report.combined_presentation()).num_gens()
        });
        rows.push(SweepRow {
            chamber,
            long_count: report.long_sets.len(),
            dim_h: report.dim_h,
            dim_h_fixed: report.dim_h_fixed,
            order: report.order,
            free: report.free,
            free_rank,
            zero_module: report.long_sets.is_empty(),
        });
    }
    Ok(rows)
}

impl SyzygyReport {
    /// The direct sum presentation the verdict was computed on.
    pub fn combined_presentation(&self) -> Presentation {
        self.coker_pres.direct_sum(&self.ker_pres)
    }

    /// Human-readable rendering; `dump_matrices` appends the matrix bodies.
    pub fn render_text(&self, dump_matrices: bool) -> String {
        let mut out = String::new();
        let p = &self.params;
        let lens: Vec<String> = p.ell().entries().iter().map(format_rational).collect();
        out.push_str(&format!(
            "parameters: m={} n={} l=({}) c={}\n",
            p.m(),
            p.n(),
            lens.join(","),
            format_rational(&p.c()),
        ));
        out.push_str(&format!(
            "long sets ({}): {}\n",
            self.long_sets.len(),
            join_subsets(&self.long_sets)
        ));
        out.push_str(&format!(
            "short sets ({}): {}\n",
            self.short_sets.len(),
            join_subsets(&self.short_sets)
        ));
        let crit: Vec<String> = self.critical_values.iter().map(format_rational).collect();
        out.push_str(&format!(
            "critical values: {}  (cr_min = {})\n",
            crit.join(" "),
            format_rational(&self.cr_min)
        ));
        out.push_str(&format!(
            "iota: {} x {}, generic rank {}\n",
            self.iota.rows.len(),
            self.iota.cols.len(),
            self.rank_iota
        ));
        out.push_str(&format!(
            "dim H = {}, dim H^G = {}\n",
            self.dim_h, self.dim_h_fixed
        ));
        out.push_str(&format!(
            "syzygy order: {}   free: {}\n",
            self.order,
            if self.free { "yes" } else { "no" }
        ));
        match self.classification_predicted {
            Some(k) => out.push_str(&format!("classification: maximal, predicted order {k}\n")),
            None => out.push_str("classification: below maximal\n"),
        }
        out.push_str(&format!(
            "consistent: {}\n",
            if self.consistent { "yes" } else { "no" }
        ));
        if dump_matrices {
            out.push_str(&render_matrix_block("iota", &self.iota.matrix));
            out.push_str(&render_matrix_block("ker relations", self.ker_pres.rels()));
            out.push_str(&render_matrix_block("coker relations", self.coker_pres.rels()));
        }
        out
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    pub fn from_json_str(s: &str) -> Result<SyzygyReport, String> {
        let dto: ReportJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        dto.try_into_report()
    }
}

fn join_subsets(sets: &[SubsetIndex]) -> String {
    sets.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Matrix dump block: a header line `name: rows x cols`, the two degree
/// rows, then the row-major canonical entries.
pub fn render_matrix_block(name: &str, map: &ModuleMap) -> String {
    let mut out = format!("{}: {} x {}\n", name, map.num_rows(), map.num_cols());
    out.push_str(&format!(
        "row degrees: {}\n",
        map.target()
            .shifts()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out.push_str(&format!(
        "col degrees: {}\n",
        map.source()
            .shifts()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    for row in map.to_text_rows() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// JSON mirror types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub m: u32,
    pub n: u32,
    pub l: Vec<String>,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<usize>>,
    pub cols: Vec<Vec<usize>>,
    pub row_degrees: Vec<i32>,
    pub col_degrees: Vec<i32>,
    pub matrix: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub gen_degrees: Vec<i32>,
    pub rel_degrees: Vec<i32>,
    pub relations: Vec<String>,
}

/// `"FREE"` or a non-negative integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderJson {
    Order(u32),
    Free(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub params: ParamsJson,
    pub long_sets: Vec<Vec<usize>>,
    pub short_sets: Vec<Vec<usize>>,
    pub critical_values: Vec<String>,
    pub cr_min: String,
    pub iota: MatrixJson,
    pub rank_iota: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: u64,
    #[serde(rename = "dim_H_fixed")]
    pub dim_h_fixed: u64,
    pub ker_pres: PresentationJson,
    pub coker_pres: PresentationJson,
    pub order: OrderJson,
    pub free: bool,
    pub classification_predicted: Option<u32>,
    pub consistent: bool,
}

fn subsets_to_json(sets: &[SubsetIndex]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.elems()).collect()
}

fn subsets_from_json(sets: &[Vec<usize>]) -> Vec<SubsetIndex> {
    sets.iter().map(|s| SubsetIndex::from_elems(s)).collect()
}

fn presentation_to_json(p: &Presentation) -> PresentationJson {
    PresentationJson {
        gen_degrees: p.gens().shifts().to_vec(),
        rel_degrees: p.rels().source().shifts().to_vec(),
        relations: p.rels().to_text_rows(),
    }
}

fn presentation_from_json(
    ring: &crate::ring::RingCtx,
    dto: &PresentationJson,
) -> Result<Presentation, String> {
    let gens = FreeModule::new(ring, dto.gen_degrees.clone());
    let source = FreeModule::new(ring, dto.rel_degrees.clone());
    let rels = ModuleMap::parse_text_rows(source, gens.clone(), &dto.relations)
        .map_err(|e| e.to_string())?;
    Presentation::new(gens, rels).map_err(|e| e.to_string())
}

impl From<&SyzygyReport> for ReportJson {
    fn from(r: &SyzygyReport) -> Self {
        ReportJson {
            params: ParamsJson {
                m: r.params.m(),
                n: r.params.n(),
                l: r.params.ell().entries().iter().map(format_rational).collect(),
                c: format_rational(&r.params.c()),
            },
            long_sets: subsets_to_json(&r.long_sets),
            short_sets: subsets_to_json(&r.short_sets),
            critical_values: r.critical_values.iter().map(format_rational).collect(),
            cr_min: format_rational(&r.cr_min),
            iota: MatrixJson {
                rows: subsets_to_json(&r.iota.rows),
                cols: subsets_to_json(&r.iota.cols),
                row_degrees: r.iota.matrix.target().shifts().to_vec(),
                col_degrees: r.iota.matrix.source().shifts().to_vec(),
                matrix: r.iota.matrix.to_text_rows(),
            },
            rank_iota: r.rank_iota,
            dim_h: r.dim_h,
            dim_h_fixed: r.dim_h_fixed,
            ker_pres: presentation_to_json(&r.ker_pres),
            coker_pres: presentation_to_json(&r.coker_pres),
            order: match r.order {
                SyzygyOrder::Free => OrderJson::Free("FREE".to_string()),
                SyzygyOrder::Order(k) => OrderJson::Order(k),
            },
            free: r.free,
            classification_predicted: r.classification_predicted,
            consistent: r.consistent,
        }
    }
}

impl ReportJson {
    pub fn try_into_report(self) -> Result<SyzygyReport, String> {
        let entries = self
            .params
            .l
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let ell = LengthVector::new(entries).map_err(|e| e.to_string())?;
        let c = parse_rational(&self.params.c).map_err(|e| e.to_string())?;
        let params =
            ChainSpaceParams::new(self.params.m, self.params.n, ell, c).map_err(|e| e.to_string())?;
        let ring = params.ring();
        let source = FreeModule::new(&ring, self.iota.col_degrees.clone());
        let target = FreeModule::new(&ring, self.iota.row_degrees.clone());
        let matrix = ModuleMap::parse_text_rows(source, target, &self.iota.matrix)
            .map_err(|e| e.to_string())?;
        let order = match &self.order {
            OrderJson::Order(k) => SyzygyOrder::Order(*k),
            OrderJson::Free(s) if s == "FREE" => SyzygyOrder::Free,
            OrderJson::Free(s) => return Err(format!("unknown order marker `{s}`")),
        };
        let critical = self
            .critical_values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        Ok(SyzygyReport {
            long_sets: subsets_from_json(&self.long_sets),
            short_sets: subsets_from_json(&self.short_sets),
            critical_values: critical,
            cr_min: parse_rational(&self.cr_min).map_err(|e| e.to_string())?,
            iota: IotaMatrix {
                rows: subsets_from_json(&self.iota.rows),
                cols: subsets_from_json(&self.iota.cols),
                matrix,
            },
            rank_iota: self.rank_iota,
            dim_h: self.dim_h,
            dim_h_fixed: self.dim_h_fixed,
            ker_pres: presentation_from_json(&ring, &self.ker_pres)?,
            coker_pres: presentation_from_json(&ring, &self.coker_pres)?,
            order,
            free: self.free,
            classification_predicted: self.classification_predicted,
            consistent: self.consistent,
            params,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homological_dimension;

    fn params(m: u32, n: u32, lengths: &[i64], c: &str) -> ChainSpaceParams {
        ChainSpaceParams::new(
            m,
            n,
            LengthVector::from_integers(lengths).unwrap(),
            parse_rational(c).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn high_threshold_cohomology_is_free_of_rank_two() {
        let p = params(2, 1, &[1, 1, 1], "3/2");
        let parts = p.cohomology();
        assert_eq!(parts.ker.num_gens(), 1);
        assert_eq!(parts.ker.num_rels(), 0);
        assert_eq!(parts.coker.num_gens(), 1);
        assert!(is_free(&parts.combined));
        assert_eq!(homological_dimension(&parts.combined), 0);
    }

    #[test]
    fn beyond_total_weight_everything_vanishes() {
        let p = params(2, 1, &[1, 1, 1], "4");
        let parts = p.cohomology();
        assert_eq!(parts.combined.num_gens(), 0);
        assert_eq!(p.dims(), (0, 0));
        let report = p.full_report();
        assert_eq!(report.order, SyzygyOrder::Free);
        assert!(report.free);
        assert!(report.consistent);
    }

    #[test]
    fn unit_lengths_r3_dimensions() {
        let p = params(2, 1, &[1, 1, 1], "0");
        assert_eq!(p.dims(), (8, 4));
    }

    #[test]
    fn unit_lengths_r3_report() {
        let p = params(2, 1, &[1, 1, 1], "0");
        let report = p.full_report();
        assert_eq!(report.order, SyzygyOrder::Order(1));
        assert!(!report.free);
        assert_eq!(report.rank_iota, 2);
        assert_eq!(report.classification_predicted, Some(1));
        assert!(report.consistent);
    }

    #[test]
    fn sweep_unit_lengths() {
        let rows = sweep(2, 1, &LengthVector::from_integers(&[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].order, SyzygyOrder::Order(1));
        assert!(!rows[0].free);
        assert_eq!(rows[1].order, SyzygyOrder::Free);
        assert_eq!(rows[1].free_rank, Some(2));
        assert!(rows[2].zero_module);
        // free rank weakly decreases across the free tail
        assert!(rows[1].free_rank.unwrap() >= rows[2].free_rank.unwrap());
    }

    #[test]
    fn json_round_trip() {
        let p = params(2, 1, &[1, 1, 1], "0");
        let report = p.full_report();
        let text = report.to_json_string();
        let back = SyzygyReport::from_json_str(&text).unwrap();
        assert_eq!(back, report);
        // field names are part of the wire format
        assert!(text.contains("\"dim_H\": 8"));
        assert!(text.contains("\"dim_H_fixed\": 4"));
        assert!(text.contains("\"order\": 1"));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["params"]["l"], serde_json::json!(["1", "1", "1"]));
        assert_eq!(value["params"]["c"], serde_json::json!("0"));
    }

    #[test]
    fn json_free_marker() {
        let p = params(2, 1, &[1, 1, 1], "2");
        let report = p.full_report();
        let text = report.to_json_string();
        assert!(text.contains("\"order\": \"FREE\""));
        let back = SyzygyReport::from_json_str(&text).unwrap();
        assert_eq!(back.order, SyzygyOrder::Free);
    }

    #[test]
    fn text_rendering_mentions_the_verdict() {
        let p = params(2, 1, &[1, 1, 1], "0");
        let report = p.full_report();
        let text = report.render_text(false);
        assert!(text.contains("syzygy order: 1"));
        assert!(text.contains("free: no"));
        let with_matrices = report.render_text(true);
        assert!(with_matrices.contains("iota: 4 x 4"));
        assert!(with_matrices.contains("t2, t3, 0, 0"));
    }
}
