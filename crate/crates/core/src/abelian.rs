//! Finite abelian groups in invariant-factor form, their elements,
//! characters, and character-equation solving.
//!
//! A group is a list of invariant factors `d_1 | d_2 | ... | d_k`, each
//! at least 2 (the empty list is the trivial group). Elements and
//! characters are exponent tuples on the factor generators; a character
//! with exponents `c` sends the i-th generator to `zeta_{d_i}^{c_i}`,
//! where `zeta_{d_i}` is the distinguished primitive root per factor.
//! Character values live in Q(zeta_E) with E the group exponent.

use num_integer::Integer;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    /// Build a group from invariant factors `d_1 | d_2 | ... | d_k`, each >= 2.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        for window in invariant_factors.windows(2) {
            if window[1] % window[0] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {} does not divide {}",
                    window[0], window[1]
                )));
            }
        }
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidGroup(
                "invariant factors must be at least 2".into(),
            ));
        }
        Ok(AbelianGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// The exponent E of the group: the largest invariant factor.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            exps: vec![0; self.rank()],
        }
    }

    pub fn element(&self, exps: &[u64]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::InvalidGroup(format!(
                "expected {} exponents, got {}",
                self.rank(),
                exps.len()
            )));
        }
        let exps = exps
            .iter()
            .zip(&self.invariant_factors)
            .map(|(e, d)| e % d)
            .collect();
        Ok(GroupElement {
            group: self.clone(),
            exps,
        })
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut exps = vec![0; self.rank()];
        exps[i] = 1;
        GroupElement {
            group: self.clone(),
            exps,
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            group: self.clone(),
            exps: vec![0; self.rank()],
        }
    }

    pub fn character(&self, exps: &[u64]) -> Result<Character> {
        let elem = self.element(exps)?;
        Ok(Character {
            group: self.clone(),
            exps: elem.exps,
        })
    }

    /// All elements, lexicographically ordered on exponent tuples.
    pub fn elements(&self) -> Vec<GroupElement> {
        exponent_tuples(&self.invariant_factors)
            .into_iter()
            .map(|exps| GroupElement {
                group: self.clone(),
                exps,
            })
            .collect()
    }

    /// All |G| characters, lexicographically ordered on exponent tuples.
    pub fn characters(&self) -> Vec<Character> {
        exponent_tuples(&self.invariant_factors)
            .into_iter()
            .map(|exps| Character {
                group: self.clone(),
                exps,
            })
            .collect()
    }
}

fn exponent_tuples(factors: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = factors.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u64; factors.len()];
    loop {
        out.push(cur.clone());
        // Increment as a mixed-radix counter, last index fastest.
        let mut i = factors.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < factors[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    group: AbelianGroup,
    exps: Vec<u64>,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(&self.group.invariant_factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        Ok(GroupElement {
            group: self.group.clone(),
            exps,
        })
    }

    pub fn inv(&self) -> GroupElement {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.invariant_factors)
            .map(|(e, d)| (d - e) % d)
            .collect();
        GroupElement {
            group: self.group.clone(),
            exps,
        }
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.invariant_factors)
            .map(|(e, d)| {
                let e = (*e as i128 * k as i128).rem_euclid(*d as i128);
                e as u64
            })
            .collect();
        GroupElement {
            group: self.group.clone(),
            exps,
        }
    }

    /// Order of the element: lcm over i of d_i / gcd(d_i, e_i).
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.group.invariant_factors)
            .map(|(e, d)| d / d.gcd(e))
            .fold(1, |acc, x| acc.lcm(&x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    group: AbelianGroup,
    exps: Vec<u64>,
}

impl Character {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(&self.group.invariant_factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        Ok(Character {
            group: self.group.clone(),
            exps,
        })
    }

    pub fn inv(&self) -> Character {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.invariant_factors)
            .map(|(e, d)| (d - e) % d)
            .collect();
        Character {
            group: self.group.clone(),
            exps,
        }
    }

    pub fn pow(&self, k: i64) -> Character {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.invariant_factors)
            .map(|(e, d)| {
                let e = (*e as i128 * k as i128).rem_euclid(*d as i128);
                e as u64
            })
            .collect();
        Character {
            group: self.group.clone(),
            exps,
        }
    }

    /// Exponent t with `chi(g) = zeta_E^t`, E the group exponent.
    pub fn pairing_exponent(&self, g: &GroupElement) -> Result<u64> {
        if self.group != g.group {
            return Err(Error::GroupMismatch);
        }
        let big_e = self.group.exponent();
        let mut t: u128 = 0;
        for ((c, e), d) in self.exps.iter().zip(&g.exps).zip(&self.group.invariant_factors) {
            t += (big_e / d) as u128 * (*c as u128 % *d as u128) * (*e as u128);
            t %= big_e as u128;
        }
        Ok(t as u64)
    }

    /// Evaluate the character at a group element, as an element of
    /// Q(zeta_E).
    pub fn eval(&self, g: &GroupElement) -> Result<CycNumber> {
        let t = self.pairing_exponent(g)?;
        Ok(CycNumber::root_of_unity(self.group.exponent(), t as i64))
    }
}

/// All characters lambda with lambda^2 = mu, found by enumeration.
pub fn solve_square(mu: &Character) -> Vec<Character> {
    mu.group()
        .characters()
        .into_iter()
        .filter(|lambda| &lambda.mul(lambda).unwrap() == mu)
        .collect()
}

/// The number of characters vanishing on `x`, i.e. `|{phi : phi(x) = 1}|`.
pub fn orthogonal_count(x: &GroupElement) -> u64 {
    x.group()
        .characters()
        .iter()
        .filter(|phi| phi.pairing_exponent(x).unwrap() == 0)
        .count() as u64
}

/// All abelian groups of order at most `cap`, as invariant-factor chains,
/// in a deterministic order (trivial group included).
pub fn groups_with_order_up_to(cap: u64) -> Vec<AbelianGroup> {
    let mut out = vec![AbelianGroup::trivial()];
    let mut stack: Vec<Vec<u64>> = Vec::new();
    for d in 2..=cap {
        stack.push(vec![d]);
    }
    while let Some(chain) = stack.pop() {
        let order: u64 = chain.iter().product();
        let last = *chain.last().unwrap();
        out.push(AbelianGroup {
            invariant_factors: chain.clone(),
        });
        let mut next = last;
        loop {
            if order.checked_mul(next).is_none_or(|o| o > cap) {
                break;
            }
            if next % last == 0 {
                let mut extended = chain.clone();
                extended.push(next);
                stack.push(extended);
            }
            next += last;
        }
    }
    out.sort_by_key(|g| (g.order(), g.invariant_factors.clone()));
    out
}

// ---- Normalization of arbitrary cyclic presentations ----

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; a and m must be coprime.
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "mod_inverse arguments must be coprime");
    s0.rem_euclid(m as i128) as u64
}

fn prime_power_split(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut pk = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                pk *= p;
            }
            out.push(pk);
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

/// One cyclic component of a presentation being normalized. The linear
/// forms give the component exponent of an element (resp. character) of
/// the original presentation, evaluated mod `size`.
#[derive(Clone, Debug)]
struct Component {
    size: u64,
    elem_form: Vec<u64>,
    char_form: Vec<u64>,
}

fn merge_components(a: &Component, b: &Component) -> Component {
    // Chinese remainder merge of coprime cyclic components.
    let size = a.size * b.size;
    let c1 = b.size * mod_inverse(b.size % a.size, a.size) % size;
    let c2 = a.size * mod_inverse(a.size % b.size, b.size) % size;
    let combine = |fa: &[u64], fb: &[u64], ka: u64, kb: u64| -> Vec<u64> {
        fa.iter()
            .zip(fb)
            .map(|(x, y)| {
                let v = (*x as u128 * ka as u128 + *y as u128 * kb as u128) % size as u128;
                v as u64
            })
            .collect()
    };
    Component {
        size,
        elem_form: combine(&a.elem_form, &b.elem_form, c1, c2),
        // The merged generator corresponds to (1, 1), so a character
        // picks up zeta_{s1}^{cA} * zeta_{s2}^{cB} = zeta_s^{s2*cA + s1*cB}.
        char_form: combine(&a.char_form, &b.char_form, b.size, a.size),
    }
}

/// The result of normalizing an arbitrary list of cyclic factors into
/// invariant-factor form, with the maps that carry element and character
/// exponent tuples through the isomorphism.
#[derive(Clone, Debug)]
pub struct NormalizedPresentation {
    group: AbelianGroup,
    components: Vec<Component>,
    source_len: usize,
}

impl NormalizedPresentation {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn map_element(&self, exps: &[u64]) -> Result<GroupElement> {
        let mapped = self.map(exps)?;
        self.group.element(&mapped)
    }

    pub fn map_character(&self, exps: &[u64]) -> Result<Character> {
        if exps.len() != self.source_len {
            return Err(Error::InvalidGroup(format!(
                "expected {} exponents, got {}",
                self.source_len,
                exps.len()
            )));
        }
        let mapped: Vec<u64> = self
            .components
            .iter()
            .map(|comp| apply_form(&comp.char_form, exps, comp.size))
            .collect();
        self.group.character(&mapped)
    }

    fn map(&self, exps: &[u64]) -> Result<Vec<u64>> {
        if exps.len() != self.source_len {
            return Err(Error::InvalidGroup(format!(
                "expected {} exponents, got {}",
                self.source_len,
                exps.len()
            )));
        }
        Ok(self
            .components
            .iter()
            .map(|comp| apply_form(&comp.elem_form, exps, comp.size))
            .collect())
    }
}

fn apply_form(form: &[u64], exps: &[u64], size: u64) -> u64 {
    let mut acc: u128 = 0;
    for (f, e) in form.iter().zip(exps) {
        acc = (acc + *f as u128 * *e as u128) % size as u128;
    }
    acc as u64
}

/// Normalize a list of cyclic factors (each >= 1; factors of 1 are
/// dropped) into invariant-factor form via prime-power splitting and
/// Chinese remainder merging.
pub fn normalize_cyclic_factors(factors: &[u64]) -> Result<NormalizedPresentation> {
    if factors.contains(&0) {
        return Err(Error::InvalidGroup("cyclic factor 0 is not allowed".into()));
    }
    let source_len = factors.len();
    // Split every factor into prime-power components.
    let mut by_prime: std::collections::BTreeMap<u64, Vec<Component>> =
        std::collections::BTreeMap::new();
    for (i, &m) in factors.iter().enumerate() {
        if m == 1 {
            continue;
        }
        for pk in prime_power_split(m) {
            let mut elem_form = vec![0; source_len];
            elem_form[i] = 1 % pk;
            let mut char_form = vec![0; source_len];
            // The split generator is the CRT unit at this prime power;
            // a character exponent c on the original factor becomes
            // c * inverse(m / pk) on the component.
            char_form[i] = mod_inverse((m / pk) % pk, pk);
            let prime = smallest_prime_factor(pk);
            by_prime.entry(prime).or_default().push(Component {
                size: pk,
                elem_form,
                char_form,
            });
        }
    }
    for comps in by_prime.values_mut() {
        comps.sort_by_key(|c| std::cmp::Reverse(c.size));
    }
    let depth = by_prime.values().map(Vec::len).max().unwrap_or(0);
    // The j-th invariant factor (largest first) merges the j-th largest
    // power of every prime.
    let mut merged: Vec<Component> = Vec::new();
    for j in 0..depth {
        let mut parts = by_prime
            .values()
            .filter_map(|comps| comps.get(j))
            .cloned()
            .collect::<Vec<_>>();
        let first = parts.remove(0);
        let comp = parts.iter().fold(first, |acc, c| merge_components(&acc, c));
        merged.push(comp);
    }
    merged.reverse();
    let group = AbelianGroup::new(merged.iter().map(|c| c.size).collect())?;
    Ok(NormalizedPresentation {
        group,
        components: merged,
        source_len,
    })
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNumber;

    fn grp(factors: &[u64]) -> AbelianGroup {
        AbelianGroup::new(factors.to_vec()).unwrap()
    }

    #[test]
    fn element_op_examples() {
        let z6 = grp(&[6]);
        assert_eq!(z6.identity().order(), 1);
        assert_eq!(z6.element(&[2]).unwrap().order(), 3);

        let z2z4 = grp(&[2, 4]);
        let prod = z2z4
            .element(&[1, 2])
            .unwrap()
            .mul(&z2z4.element(&[1, 3]).unwrap())
            .unwrap();
        assert_eq!(prod.exps(), &[0, 1]);

        let other = grp(&[4]);
        assert_eq!(
            z6.identity().mul(&other.identity()),
            Err(Error::GroupMismatch)
        );
    }

    #[test]
    fn invalid_invariant_factors_rejected() {
        assert!(AbelianGroup::new(vec![2, 3]).is_err());
        assert!(AbelianGroup::new(vec![1, 2]).is_err());
        assert!(AbelianGroup::new(vec![2, 4, 8]).is_ok());
    }

    #[test]
    fn char_eval_examples() {
        let z3 = grp(&[3]);
        let g = z3.element(&[2]).unwrap();
        assert!(z3.trivial_character().eval(&g).unwrap().is_one());
        let chi = z3.character(&[1]).unwrap();
        assert!(chi.eval(&z3.identity()).unwrap().is_one());
        assert_eq!(chi.eval(&g).unwrap(), CycNumber::root_of_unity(3, 2));
    }

    #[test]
    fn char_eval_is_multiplicative() {
        let g = grp(&[2, 4]);
        for chi in g.characters() {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = chi.eval(&a.mul(&b).unwrap()).unwrap();
                    let rhs = &chi.eval(&a).unwrap() * &chi.eval(&b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn character_group_examples() {
        let z2 = grp(&[2]);
        assert_eq!(z2.characters().len(), 2);

        let z12 = grp(&[12]);
        let chi = z12.character(&[5]).unwrap();
        assert!(chi.mul(&chi.inv()).unwrap().is_trivial());

        // On Z5 the squaring map is a bijection of the dual group.
        let z5 = grp(&[5]);
        let squares: std::collections::BTreeSet<_> = z5
            .characters()
            .into_iter()
            .map(|l| l.pow(2).exps().to_vec())
            .collect();
        assert_eq!(squares.len(), 5);
    }

    #[test]
    fn solve_square_examples() {
        let z3 = grp(&[3]);
        let sols = solve_square(&z3.trivial_character());
        assert_eq!(sols.len(), 1);
        assert!(sols[0].is_trivial());

        let z2 = grp(&[2]);
        assert_eq!(solve_square(&z2.trivial_character()).len(), 2);

        let z5 = grp(&[5]);
        for mu in z5.characters() {
            assert_eq!(solve_square(&mu).len(), 1);
        }
    }

    #[test]
    fn solve_square_counts() {
        for g in [grp(&[4]), grp(&[2, 2]), grp(&[2, 6]), grp(&[9]), grp(&[15])] {
            let square_roots_of_one = solve_square(&g.trivial_character()).len();
            for mu in g.characters() {
                let sols = solve_square(&mu);
                if !sols.is_empty() {
                    assert_eq!(sols.len(), square_roots_of_one);
                }
                if g.order() % 2 == 1 {
                    assert_eq!(sols.len(), 1);
                }
            }
        }
    }

    #[test]
    fn orthogonal_count_examples() {
        let z4 = grp(&[4]);
        assert_eq!(orthogonal_count(&z4.identity()), 4);
        assert_eq!(orthogonal_count(&z4.generator(0)), 1);

        let z2z2 = grp(&[2, 2]);
        assert_eq!(orthogonal_count(&z2z2.element(&[1, 0]).unwrap()), 2);
    }

    #[test]
    fn character_counts_up_to_order_sixty_four() {
        for g in groups_with_order_up_to(64) {
            let chars = g.characters();
            assert_eq!(chars.len() as u64, g.order().max(1));
            let distinct: std::collections::BTreeSet<_> =
                chars.iter().map(|c| c.exps().to_vec()).collect();
            assert_eq!(distinct.len(), chars.len());
            for x in g.elements() {
                assert_eq!(orthogonal_count(&x) * x.order(), g.order());
            }
        }
    }

    #[test]
    fn character_values_are_roots_of_the_element_order() {
        for g in groups_with_order_up_to(16) {
            for x in g.elements() {
                for chi in g.characters() {
                    let v = chi.eval(&x).unwrap();
                    assert!(v.pow(x.order() as i64).is_one());
                    assert_eq!(x.order() % v.order_of_unity().unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn group_enumeration_small_orders() {
        let groups = groups_with_order_up_to(16);
        let count_of_order = |m: u64| groups.iter().filter(|g| g.order() == m).count();
        assert_eq!(count_of_order(1), 1);
        assert_eq!(count_of_order(4), 2); // Z4, Z2xZ2
        assert_eq!(count_of_order(8), 3);
        assert_eq!(count_of_order(12), 2);
        assert_eq!(count_of_order(16), 5);
    }

    #[test]
    fn normalization_merges_coprime_factors() {
        let norm = normalize_cyclic_factors(&[2, 3]).unwrap();
        assert_eq!(norm.group().invariant_factors(), &[6]);
        // (1, 0) has the CRT image 3 in Z6.
        assert_eq!(norm.map_element(&[1, 0]).unwrap().exps(), &[3]);
        assert_eq!(norm.map_character(&[1, 1]).unwrap().exps(), &[5]);

        let norm = normalize_cyclic_factors(&[6, 4, 1]).unwrap();
        assert_eq!(norm.group().invariant_factors(), &[2, 12]);
    }

    #[test]
    fn normalization_preserves_character_values() {
        // chi(g) computed in the raw presentation must equal the value of
        // the mapped character at the mapped element.
        for factors in [vec![2, 3], vec![4, 6], vec![2, 2, 9], vec![12, 10]] {
            let norm = normalize_cyclic_factors(&factors).unwrap();
            let tuples = exponent_tuples(&factors);
            for chi in &tuples {
                for g in &tuples {
                    let direct = factors
                        .iter()
                        .zip(chi.iter().zip(g))
                        .fold(CycNumber::one(), |acc, (&m, (&c, &e))| {
                            &acc * &CycNumber::root_of_unity(m, (c * e) as i64)
                        });
                    let mapped = norm
                        .map_character(chi)
                        .unwrap()
                        .eval(&norm.map_element(g).unwrap())
                        .unwrap();
                    assert_eq!(direct, mapped, "factors {factors:?} chi {chi:?} g {g:?}");
                }
            }
        }
    }

    #[test]
    fn normalization_is_identity_on_invariant_form() {
        let norm = normalize_cyclic_factors(&[2, 4]).unwrap();
        assert_eq!(norm.group().invariant_factors(), &[2, 4]);
        for e in exponent_tuples(&[2, 4]) {
            assert_eq!(norm.map_element(&e).unwrap().exps(), &e[..]);
            assert_eq!(norm.map_character(&e).unwrap().exps(), &e[..]);
        }
    }
}
