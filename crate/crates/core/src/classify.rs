//! Stratification of the simple modules of H(D) by exponent class, the
//! counting properties of those classes, and the exhaustive verification
//! sweep over all valid data on small groups.

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{groups_with_order_up_to, orthogonal_count, Character};
use crate::datum::Datum;
use crate::error::{Error, Result};
use crate::hopf::{commute_yx, commute_yx_iterative, projective_witness};
use crate::modules::{exponent, is_self_dual, simple, verma, ModuleRep};
use crate::trace::{form_matrix_closed, form_matrix_semantic, trace_bruteforce, trace_closed};

/// Enumeration cap guarding the exhaustive character searches.
pub const DEFAULT_GROUP_CAP: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct WeightInfo {
    pub character: Character,
    pub exponent: usize,
    pub self_dual: bool,
}

/// All |G| weights of a datum, stratified by exponent class.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub datum: Datum,
    /// `classes[e]` lists the weights with exponent e, in enumeration order.
    pub classes: Vec<Vec<WeightInfo>>,
}

impl ClassTable {
    pub fn count(&self, e: usize) -> usize {
        self.classes[e].len()
    }

    pub fn self_dual_count(&self, e: usize) -> usize {
        self.classes[e].iter().filter(|w| w.self_dual).count()
    }

    pub fn total(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

/// Enumerate all weights of the datum and classify them by exponent and
/// self-duality.
pub fn classes(datum: &Datum, cap: u64) -> Result<ClassTable> {
    let order = datum.group().order();
    if order > cap {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let n = datum.n() as usize;
    let mut table = vec![Vec::new(); n];
    for lambda in datum.group().characters() {
        let e = exponent(datum, &lambda)?;
        let self_dual = is_self_dual(datum, &lambda)?;
        table[e].push(WeightInfo {
            character: lambda,
            exponent: e,
            self_dual,
        });
    }
    Ok(ClassTable {
        datum: datum.clone(),
        classes: table,
    })
}

/// Pass/fail record for the counting properties of the exponent classes.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassReport {
    /// Whether every class 0..n-1 is nonempty.
    pub all_nonempty: bool,
    /// Whether n divides |ab|.
    pub n_divides_ab_order: bool,
    /// Clause (1): for n >= 3, all classes nonempty iff n divides |ab|.
    /// For n = 2 the equivalence fails (the top class absorbs every
    /// weight with `lambda(ab)` outside `<q> = {1, -1}`, and ab != 1
    /// forces such weights or a solution of `lambda(ab) = -1`); there
    /// all classes must always be nonempty.
    pub clause1: bool,
    /// Clause (2): nonempty classes with e < n-1 share one cardinality,
    /// equal to the number of characters orthogonal to ab.
    pub clause2: bool,
    /// Clause (3), only when n is even and n does not divide |ab|:
    /// nonempty classes below n-1 occur at even e only, and the top
    /// class is nonempty iff |ab| != n/2.
    pub clause3: Option<bool>,
}

impl ClassReport {
    pub fn all_pass(&self) -> bool {
        self.clause1 && self.clause2 && self.clause3.unwrap_or(true)
    }
}

/// Check the class-counting properties for one datum.
pub fn verify_class_props(datum: &Datum) -> Result<ClassReport> {
    let table = classes(datum, DEFAULT_GROUP_CAP)?;
    Ok(verify_class_props_of(&table))
}

fn verify_class_props_of(table: &ClassTable) -> ClassReport {
    let datum = &table.datum;
    let n = datum.n();
    let ab_order = datum.ab().order();
    let all_nonempty = table.classes.iter().all(|c| !c.is_empty());
    let n_divides_ab_order = ab_order.is_multiple_of(n);
    let clause1 = if n >= 3 {
        all_nonempty == n_divides_ab_order
    } else {
        all_nonempty
    };

    let perp = orthogonal_count(&datum.ab()) as usize;
    let clause2 = table.classes[..n as usize - 1]
        .iter()
        .filter(|c| !c.is_empty())
        .all(|c| c.len() == perp);

    let clause3 = if n.is_multiple_of(2) && !n_divides_ab_order {
        let even_only = table.classes[..n as usize - 1]
            .iter()
            .enumerate()
            .all(|(e, c)| c.is_empty() || e % 2 == 0);
        let top_nonempty = !table.classes[n as usize - 1].is_empty();
        let top_expected = ab_order != n / 2;
        Some(even_only && top_nonempty == top_expected)
    } else {
        None
    };

    ClassReport {
        all_nonempty,
        n_divides_ab_order,
        clause1,
        clause2,
        clause3,
    }
}

/// All valid data over abelian groups of order at most `max_order`:
/// every group in invariant-factor form, every (a, b) pair, every chi,
/// filtered through validation. Isomorphic duplicates are kept.
pub fn enumerate_data(max_order: u64) -> Vec<Datum> {
    let mut out = Vec::new();
    for group in groups_with_order_up_to(max_order) {
        let elements = group.elements();
        let characters = group.characters();
        for a in &elements {
            for b in &elements {
                for chi in &characters {
                    if let Ok(datum) =
                        Datum::validate(group.clone(), a.clone(), b.clone(), chi.clone())
                    {
                        out.push(datum);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Per-class row of the sweep report.
#[derive(Clone, Debug, Serialize)]
pub struct SweepClassRow {
    pub e: usize,
    pub count: usize,
    pub self_dual_count: usize,
}

/// Outcome of every check that the sweep runs on one datum.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub serial: String,
    pub n: u64,
    pub ab_order: u64,
    pub rows: Vec<SweepClassRow>,
    pub report: ClassReport,
    /// trace_closed = Tr(A^-1 A^T) for both form routes, on every
    /// self-dual weight.
    pub traces_three_way: bool,
    /// trace_closed vanishes exactly on the self-dual weights with
    /// e = n-1.
    pub zero_iff_top_exponent: bool,
    /// projective_witness returns c != 0 on every self-dual weight with
    /// e = n-1.
    pub witness_nonzero: bool,
    /// Relations, dimensions, and basis-weight distinctness of every
    /// Verma and simple module.
    pub modules_wellformed: bool,
    /// Closed vs iterative commutation on all y^j x^k, when n <= 6.
    pub commutation_agrees: Option<bool>,
    /// Exactly one self-dual weight per class, when |G| is odd.
    pub unique_self_dual_per_class: Option<bool>,
}

impl SweepRecord {
    pub fn all_pass(&self) -> bool {
        self.report.all_pass()
            && self.traces_three_way
            && self.zero_iff_top_exponent
            && self.witness_nonzero
            && self.modules_wellformed
            && self.commutation_agrees.unwrap_or(true)
            && self.unique_self_dual_per_class.unwrap_or(true)
    }
}

fn check_datum(datum: &Datum) -> SweepRecord {
    let n = datum.n();
    let table = classes(datum, DEFAULT_GROUP_CAP).expect("sweep groups are small");
    let report = verify_class_props_of(&table);
    let rows = (0..n as usize)
        .map(|e| SweepClassRow {
            e,
            count: table.count(e),
            self_dual_count: table.self_dual_count(e),
        })
        .collect();

    let mut traces_three_way = true;
    let mut zero_iff_top_exponent = true;
    let mut witness_nonzero = true;
    let mut modules_wellformed = true;

    for class in &table.classes {
        for info in class {
            let lambda = &info.character;
            let z = verma(datum, lambda).expect("valid weight");
            let l = simple(datum, lambda).expect("valid weight");
            if z.verify_relations().is_err() || l.verify_relations().is_err() {
                modules_wellformed = false;
            }
            if l.dim() != info.exponent + 1 {
                modules_wellformed = false;
            }
            let weights = z.basis_weights();
            for i in 0..weights.len() {
                for j in i + 1..weights.len() {
                    if weights[i] == weights[j] {
                        modules_wellformed = false;
                    }
                }
            }
            if !info.self_dual {
                continue;
            }
            let closed = trace_closed(datum, lambda).expect("self-dual weight");
            let via_closed = form_matrix_closed(datum, lambda)
                .and_then(|a| trace_bruteforce(&a))
                .expect("self-dual weight");
            let via_semantic = form_matrix_semantic(datum, lambda)
                .and_then(|a| trace_bruteforce(&a))
                .expect("self-dual weight");
            if closed != via_closed || closed != via_semantic {
                traces_three_way = false;
            }
            let is_top = info.exponent == n as usize - 1;
            if closed.is_zero() != is_top {
                zero_iff_top_exponent = false;
            }
            if is_top {
                match projective_witness(datum, lambda) {
                    Ok((_, c)) => {
                        if c.is_zero() {
                            witness_nonzero = false;
                        }
                    }
                    Err(_) => witness_nonzero = false,
                }
            }
        }
    }

    let commutation_agrees = if n <= 6 {
        let mut ok = true;
        'outer: for j in 0..n {
            for k in 0..n {
                let closed = commute_yx(datum, j, k).expect("powers below n");
                let iterative = commute_yx_iterative(datum, j, k).expect("powers below n");
                if closed != iterative {
                    ok = false;
                    break 'outer;
                }
            }
        }
        Some(ok)
    } else {
        None
    };

    let unique_self_dual_per_class = if datum.group().order() % 2 == 1 {
        Some(
            table
                .classes
                .iter()
                .all(|c| c.iter().filter(|w| w.self_dual).count() == usize::from(!c.is_empty())),
        )
    } else {
        None
    };

    SweepRecord {
        serial: datum.serial(),
        n,
        ab_order: datum.ab().order(),
        rows,
        report,
        traces_three_way,
        zero_iff_top_exponent,
        witness_nonzero,
        modules_wellformed,
        commutation_agrees,
        unique_self_dual_per_class,
    }
}

/// Run every check on every valid datum over groups of order at most
/// `max_order`. Work items run in parallel; the merged report is sorted
/// by datum serialization, so output is deterministic.
pub fn sweep(max_order: u64) -> Vec<SweepRecord> {
    let data = enumerate_data(max_order);
    let mut records: Vec<SweepRecord> = data.par_iter().map(check_datum).collect();
    records.sort_by(|a, b| a.serial.cmp(&b.serial));
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::datum::uqsl2_datum;

    #[test]
    fn uqsl2_classes_one_weight_per_exponent() {
        let d = uqsl2_datum(3).unwrap();
        let table = classes(&d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(table.total(), 3);
        for e in 0..3 {
            assert_eq!(table.count(e), 1, "class {e}");
            assert_eq!(table.self_dual_count(e), 1);
        }
        let report = verify_class_props(&d).unwrap();
        assert!(report.all_nonempty);
        assert!(report.n_divides_ab_order);
        assert!(report.all_pass());
    }

    #[test]
    fn group_cap_is_enforced() {
        let d = uqsl2_datum(5).unwrap();
        assert!(matches!(
            classes(&d, 3),
            Err(Error::GroupTooLarge { order: 5, cap: 3 })
        ));
    }

    #[test]
    fn class_totals_match_group_order() {
        for datum in enumerate_data(8) {
            let table = classes(&datum, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(table.total() as u64, datum.group().order());
        }
    }

    #[test]
    fn even_n_with_small_ab_order_empties_the_top_class() {
        // Z4 with a = b = g and chi of order 4: n = 4, ab = g^2 has
        // order 2 = n/2, so the top class must be empty and only even
        // exponents below appear.
        let g = AbelianGroup::new(vec![4]).unwrap();
        let a = g.element(&[1]).unwrap();
        let chi = g.character(&[1]).unwrap();
        let d = Datum::validate(g, a.clone(), a, chi).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.ab().order(), 2);
        let table = classes(&d, DEFAULT_GROUP_CAP).unwrap();
        assert!(table.classes[3].is_empty());
        assert!(table.classes[1].is_empty());
        assert!(!table.classes[0].is_empty());
        assert!(!table.classes[2].is_empty());
        let report = verify_class_props(&d).unwrap();
        assert_eq!(report.clause3, Some(true));
        assert!(report.all_pass());
    }

    #[test]
    fn sweep_of_tiny_groups_passes_everything() {
        let records = sweep(6);
        assert!(!records.is_empty());
        for r in &records {
            assert!(r.all_pass(), "failed record: {r:?}");
        }
        // Deterministic ordering by serialization.
        let mut serials: Vec<_> = records.iter().map(|r| r.serial.clone()).collect();
        let sorted = {
            let mut s = serials.clone();
            s.sort();
            s
        };
        assert_eq!(serials, sorted);
        serials.dedup();
        assert_eq!(serials.len(), records.len(), "no duplicate data");
    }
}
