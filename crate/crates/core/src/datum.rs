//! The defining datum (G, a, b, chi) of a nilpotent lifting of a
//! quantum plane, its validation, and builders for two standard cases:
//! the small quantum group u_q(sl2) and the Drinfeld double of a Taft
//! algebra.
//!
//! A valid datum satisfies
//!   (1) n = |chi(a)| > 1,
//!   (2) chi(a) = chi(b),
//!   (3) ab != 1,
//! and carries the derived constants n and q = chi(a^-1), with |q| = n.

use serde::{Deserialize, Serialize};

use crate::abelian::{normalize_cyclic_factors, AbelianGroup, Character, GroupElement};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Datum {
    group: AbelianGroup,
    a: GroupElement,
    b: GroupElement,
    chi: Character,
    n: u64,
    q: CycNumber,
    // q = zeta_E^q_exp with E the group exponent.
    q_exp: u64,
}

impl Datum {
    /// Check conditions (1)-(3) and derive n and q.
    pub fn validate(
        group: AbelianGroup,
        a: GroupElement,
        b: GroupElement,
        chi: Character,
    ) -> Result<Datum> {
        if a.group() != &group || b.group() != &group || chi.group() != &group {
            return Err(Error::GroupMismatch);
        }
        if a.mul(&b)?.is_identity() {
            return Err(Error::ConditionThreeViolated);
        }
        let chi_a = chi.eval(&a)?;
        let n = chi_a.order_of_unity()?;
        if n <= 1 {
            return Err(Error::ConditionOneViolated(
                "chi(a) = 1 has order 1".into(),
            ));
        }
        let chi_a_exp = chi.pairing_exponent(&a)?;
        if chi_a_exp != chi.pairing_exponent(&b)? {
            return Err(Error::ConditionTwoViolated);
        }
        let q = chi_a.inv().expect("roots of unity are invertible");
        let big_e = group.exponent();
        let q_exp = (big_e - chi_a_exp) % big_e;
        Ok(Datum {
            group,
            a,
            b,
            chi,
            n,
            q,
            q_exp,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn a(&self) -> &GroupElement {
        &self.a
    }

    pub fn b(&self) -> &GroupElement {
        &self.b
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    /// The nilpotency degree n = |chi(a)| = |q|.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The root of unity q = chi(a^-1).
    pub fn q(&self) -> &CycNumber {
        &self.q
    }

    /// `q^k` straight from the power table: q = zeta_E^q_exp.
    pub fn q_pow(&self, k: i64) -> CycNumber {
        let big_e = self.group.exponent();
        let t = (self.q_exp as i128 * k as i128).rem_euclid(big_e as i128);
        CycNumber::root_of_unity(big_e, t as i64)
    }

    pub fn ab(&self) -> GroupElement {
        self.a.mul(&self.b).expect("same group")
    }

    /// The exponent e(lambda) in [0, n-1]: the unique e with
    /// `lambda(ab) = q^e` when `lambda(ab)` lies in the cyclic group
    /// generated by q, and n-1 otherwise.
    pub fn weight_exponent(&self, lambda: &Character) -> Result<usize> {
        let big_e = self.group.exponent();
        let target = lambda.pairing_exponent(&self.ab())?;
        for e in 0..self.n {
            if (self.q_exp as u128 * e as u128) % big_e as u128 == target as u128 {
                return Ok(e as usize);
            }
        }
        Ok(self.n as usize - 1)
    }

    /// Pairing exponent t with `chi(g) = zeta_E^t`, for a group element
    /// given by its exponent tuple.
    pub(crate) fn chi_pairing(&self, g_exps: &[u64]) -> u64 {
        let g = self
            .group
            .element(g_exps)
            .expect("exponent tuple matches the group");
        self.chi.pairing_exponent(&g).expect("same group")
    }

    /// `zeta_E^t` for an unreduced exponent t.
    pub(crate) fn chi_root(&self, t: u128) -> CycNumber {
        let big_e = self.group.exponent();
        CycNumber::root_of_unity(big_e, (t % big_e as u128) as i64)
    }

    /// Componentwise product of two element exponent tuples.
    pub(crate) fn group_exp_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(self.group.invariant_factors())
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    /// Compact canonical serialization, also used as a deterministic
    /// sort key for sweeps.
    pub fn serial(&self) -> String {
        let list = |v: &[u64]| {
            v.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "G=[{}];a=[{}];b=[{}];chi=[{}]",
            list(self.group.invariant_factors()),
            list(self.a.exps()),
            list(self.b.exps()),
            list(self.chi.exps()),
        )
    }

    pub fn to_spec(&self) -> DatumSpec {
        DatumSpec {
            group: self.group.invariant_factors().to_vec(),
            a: self.a.exps().to_vec(),
            b: self.b.exps().to_vec(),
            chi: self.chi.exps().to_vec(),
        }
    }
}

impl PartialOrd for Datum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Datum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (
            self.group.invariant_factors(),
            self.a.exps(),
            self.b.exps(),
            self.chi.exps(),
        )
            .cmp(&(
                other.group.invariant_factors(),
                other.a.exps(),
                other.b.exps(),
                other.chi.exps(),
            ))
    }
}

/// JSON form of a datum. The group may be any list of cyclic factors;
/// it is normalized to invariant-factor form on load, with element and
/// character exponents carried through the isomorphism. The character
/// convention is `chi(g_i) = zeta_{d_i}^{chi_i}` with `zeta_{d_i}` the
/// distinguished primitive root for the i-th factor.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DatumSpec {
    pub group: Vec<u64>,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub chi: Vec<u64>,
}

impl DatumSpec {
    pub fn build(&self) -> Result<Datum> {
        let norm = normalize_cyclic_factors(&self.group)?;
        let a = norm.map_element(&self.a)?;
        let b = norm.map_element(&self.b)?;
        let chi = norm.map_character(&self.chi)?;
        Datum::validate(norm.group().clone(), a, b, chi)
    }

    pub fn from_json(json: &str) -> Result<DatumSpec> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The datum of u_q(sl2) at an odd order n >= 3: G = Z_n generated by K,
/// a = b = K, chi(K) = zeta_n^2, so q = chi(K^-1) = zeta_n^-2.
pub fn uqsl2_datum(n: u64) -> Result<Datum> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    let group = AbelianGroup::new(vec![n])?;
    let k = group.generator(0);
    let chi = group.character(&[2])?;
    Datum::validate(group, k.clone(), k, chi)
}

/// The datum of the Drinfeld double of the Taft algebra at an odd order
/// n >= 3, realized on Gamma = Z_n x Z_n with generators K = (1, 0) and
/// the dual generator (0, 1): a = K, b = (0, -1), and the character phi
/// with phi(K) = zeta_n^2, phi((0,1)) = zeta_n^-2.
pub fn drinfeld_taft_datum(n: u64) -> Result<Datum> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    let group = AbelianGroup::new(vec![n, n])?;
    let a = group.element(&[1, 0])?;
    let b = group.element(&[0, n - 1])?;
    let phi = group.character(&[2, n - 2])?;
    Datum::validate(group, a, b, phi)
}
