//! Numerical 3-dimensional matching: instances, checking, brute force,
//! strengthening, and a seeded yes-instance generator.
//!
//! An instance consists of `k` red values `r`, `k` blue values `b`, `k` green
//! values `g` and a target `B` with `sum(r) + sum(b) + sum(g) = k * B`. The
//! question is whether permutations `pi`, `pi_prime` exist such that
//! `r[pi[i]] + b[i] + g[pi_prime[i]] = B` for every `i`.
//!
//! Values are arbitrary-precision: the strengthening transformation produces
//! numbers of magnitude `k^(4c)`, which can exceed any machine word.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// An N3DM instance. `target` is the per-triple sum usually written `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N3dmInstance {
    pub r: Vec<BigUint>,
    pub b: Vec<BigUint>,
    pub g: Vec<BigUint>,
    pub target: BigUint,
}

impl N3dmInstance {
    pub fn new(r: Vec<BigUint>, b: Vec<BigUint>, g: Vec<BigUint>, target: BigUint) -> Result<Self> {
        let inst = N3dmInstance { r, b, g, target };
        validate_instance(&inst)?;
        Ok(inst)
    }

    /// Convenience constructor from machine integers (used heavily in tests).
    pub fn from_u64(r: &[u64], b: &[u64], g: &[u64], target: u64) -> Result<Self> {
        Self::new(
            r.iter().copied().map(BigUint::from).collect(),
            b.iter().copied().map(BigUint::from).collect(),
            g.iter().copied().map(BigUint::from).collect(),
            BigUint::from(target),
        )
    }

    /// Number of triples.
    pub fn k(&self) -> usize {
        self.r.len()
    }

    /// Largest value occurring in `r`, `b` or `g`.
    pub fn max_value(&self) -> BigUint {
        self.r
            .iter()
            .chain(&self.b)
            .chain(&self.g)
            .max()
            .cloned()
            .unwrap_or_default()
    }
}

/// A candidate matching: `pi` pairs red values with blue positions and
/// `pi_prime` pairs green values. Both are 0-based index vectors; a valid
/// solution has both as permutations of `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct N3dmSolution {
    pub pi: Vec<usize>,
    pub pi_prime: Vec<usize>,
}

/// Checks the structural invariants: `k >= 1`, equal lengths, every value
/// at least 1, and the sum identity `sum = k * B`.
pub fn validate_instance(inst: &N3dmInstance) -> Result<()> {
    let k = inst.r.len();
    if k == 0 {
        return Err(Error::InvalidInput("instance must have k >= 1".into()));
    }
    if inst.b.len() != k || inst.g.len() != k {
        return Err(Error::InvalidInput(format!(
            "value arrays must have equal length: |r|={}, |b|={}, |g|={}",
            inst.r.len(),
            inst.b.len(),
            inst.g.len()
        )));
    }
    let one = BigUint::one();
    for (name, vals) in [("r", &inst.r), ("b", &inst.b), ("g", &inst.g)] {
        if let Some(i) = vals.iter().position(|v| *v < one) {
            return Err(Error::InvalidInput(format!("{name}[{i}] must be >= 1")));
        }
    }
    let total: BigUint = inst.r.iter().chain(&inst.b).chain(&inst.g).sum();
    let expected = &inst.target * BigUint::from(k);
    if total != expected {
        return Err(Error::InvalidInput(format!(
            "value sum {total} != k * B = {expected}"
        )));
    }
    Ok(())
}

fn validate_permutation(name: &str, perm: &[usize], k: usize) -> Result<()> {
    if perm.len() != k {
        return Err(Error::InvalidInput(format!(
            "{name} has length {}, expected {k}",
            perm.len()
        )));
    }
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k {
            return Err(Error::InvalidInput(format!("{name} entry {p} out of range 0..{k}")));
        }
        if seen[p] {
            return Err(Error::InvalidInput(format!("{name} repeats index {p}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// True iff `sol` solves `inst`: both index vectors are permutations and
/// every triple sums to the target.
pub fn check_solution(inst: &N3dmInstance, sol: &N3dmSolution) -> Result<bool> {
    validate_instance(inst)?;
    let k = inst.k();
    validate_permutation("pi", &sol.pi, k)?;
    validate_permutation("pi_prime", &sol.pi_prime, k)?;
    Ok((0..k).all(|i| {
        &inst.r[sol.pi[i]] + &inst.b[i] + &inst.g[sol.pi_prime[i]] == inst.target
    }))
}

/// Default `k` guard for [`brute_force_solve`].
pub const BRUTE_FORCE_K_LIMIT: usize = 10;

/// Exhaustive search for a matching, in canonical order: triples are filled
/// for `i = 0, 1, ...`, trying unused red indices ascending and, inside
/// that, unused green indices ascending. The first solution found is thus
/// the lexicographically smallest `(pi, pi_prime)` assignment sequence.
///
/// Guarded at `k <= BRUTE_FORCE_K_LIMIT`; use
/// [`brute_force_solve_with_limit`] to override.
pub fn brute_force_solve(inst: &N3dmInstance) -> Result<Option<N3dmSolution>> {
    brute_force_solve_with_limit(inst, BRUTE_FORCE_K_LIMIT)
}

/// [`brute_force_solve`] with an explicit `k` guard.
pub fn brute_force_solve_with_limit(
    inst: &N3dmInstance,
    max_k: usize,
) -> Result<Option<N3dmSolution>> {
    validate_instance(inst)?;
    let k = inst.k();
    if k > max_k {
        return Err(Error::CapacityExceeded(format!(
            "brute force guard: k = {k} exceeds limit {max_k}"
        )));
    }

    struct Search<'a> {
        inst: &'a N3dmInstance,
        pi: Vec<usize>,
        pi_prime: Vec<usize>,
        red_used: Vec<bool>,
        green_used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) -> bool {
            let k = self.inst.k();
            if i == k {
                return true;
            }
            for red in 0..k {
                if self.red_used[red] {
                    continue;
                }
                let partial = &self.inst.r[red] + &self.inst.b[i];
                if partial >= self.inst.target {
                    continue; // green must contribute at least 1
                }
                let need = &self.inst.target - partial;
                for green in 0..k {
                    if self.green_used[green] || self.inst.g[green] != need {
                        continue;
                    }
                    self.red_used[red] = true;
                    self.green_used[green] = true;
                    self.pi.push(red);
                    self.pi_prime.push(green);
                    if self.go(i + 1) {
                        return true;
                    }
                    self.pi.pop();
                    self.pi_prime.pop();
                    self.red_used[red] = false;
                    self.green_used[green] = false;
                }
            }
            false
        }
    }

    let mut s = Search {
        inst,
        pi: Vec::with_capacity(k),
        pi_prime: Vec::with_capacity(k),
        red_used: vec![false; k],
        green_used: vec![false; k],
    };
    Ok(if s.go(0) {
        Some(N3dmSolution { pi: s.pi, pi_prime: s.pi_prime })
    } else {
        None
    })
}

/// Output of [`strengthen`]: the rescaled instance together with the chosen
/// scale exponent `c` and parity pad `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthenRecord {
    pub c: u32,
    pub mu: u8,
    pub original: N3dmInstance,
    pub strengthened: N3dmInstance,
}

/// Rescales an instance so that red, blue and green values occupy separated
/// magnitude bands:
///
/// ```text
/// r'_i = 3k^c + 2 r_i          (3k^c <= r' <= 4k^c)
/// b'_i = k^2c + 2 b_i + mu     (k^2c <= b' <= k^2c + k^c, always odd)
/// g'_i = k^4c + 2 g_i          (k^4c <= g' <= k^4c + k^c)
/// B'   = 3k^c + k^2c + k^4c + 2B + mu
/// ```
///
/// where `mu` is 0 for odd `k` and 1 for even `k` (making `b'` odd either
/// way), and `c` is the smallest integer > 1 with `k^c >= 2*max + 2`, i.e.
/// all original values at most `(k^c - 2) / 2`; that bound yields the band
/// inequalities above. The transformation preserves solutions exactly: a
/// pair of permutations solves the original iff it solves the result.
///
/// For `k = 1` no exponent can satisfy the bound (`1^c = 1`), so `c = 2` is
/// used; the band inequalities are unattainable there but the solution-set
/// equivalence still holds.
pub fn strengthen(inst: &N3dmInstance) -> Result<StrengthenRecord> {
    validate_instance(inst)?;
    let k = inst.k();
    let big_k = BigUint::from(k);
    let max = inst.max_value();
    let bound = BigUint::from(2u32) * &max + BigUint::from(2u32);

    let c: u32 = if k == 1 {
        2
    } else {
        let mut c = 2u32;
        while big_k.pow(c) < bound {
            c += 1;
        }
        c
    };

    let mu: u8 = if k % 2 == 1 { 0 } else { 1 };
    let kc = big_k.pow(c);
    let k2c = big_k.pow(2 * c);
    let k4c = big_k.pow(4 * c);
    let two = BigUint::from(2u32);

    let r: Vec<BigUint> = inst.r.iter().map(|v| BigUint::from(3u32) * &kc + &two * v).collect();
    let b: Vec<BigUint> = inst
        .b
        .iter()
        .map(|v| &k2c + &two * v + BigUint::from(mu))
        .collect();
    let g: Vec<BigUint> = inst.g.iter().map(|v| &k4c + &two * v).collect();
    let target =
        BigUint::from(3u32) * &kc + &k2c + &k4c + &two * &inst.target + BigUint::from(mu);

    let strengthened = N3dmInstance { r, b, g, target };
    debug_assert!(validate_instance(&strengthened).is_ok());
    debug_assert!(strengthened.b.iter().all(|v| v.is_odd()));

    Ok(StrengthenRecord { c, mu, original: inst.clone(), strengthened })
}

/// Generates a solvable instance, deterministically in `(k, seed,
/// value_bound)`, together with a witness solution.
///
/// All of `r`, `b`, `g` lie in `[1, value_bound]`; `B` is derived. Blue
/// values are odd, and the value ranges are arranged (`r` small, `b` large)
/// so that downstream drawing synthesis always has room for its spinal
/// descent regardless of how triples are paired.
pub fn generate_yes_instance(
    k: usize,
    seed: u64,
    value_bound: u64,
) -> Result<(N3dmInstance, N3dmSolution)> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    if value_bound == 0 {
        return Err(Error::InvalidInput("value_bound must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // r in [1, r_hi]; b odd in [b_lo, value_bound] with b_lo = 2*r_hi + 1
    // when the bound allows an odd value >= 3. Then for any two triples
    // min(r+b) - max(r) >= r_hi + 2, which is the slack synthesis needs.
    let (r_hi, b_lo) = if value_bound >= 3 {
        let r_hi = (value_bound / 4).max(1);
        (r_hi, 2 * r_hi + 1)
    } else {
        (1, 1)
    };
    let b_steps = (value_bound.saturating_sub(b_lo)) / 2;

    let r_vals: Vec<u64> = (0..k).map(|_| rng.random_range(1..=r_hi)).collect();
    let b_vals: Vec<u64> = (0..k)
        .map(|_| b_lo + 2 * rng.random_range(0..=b_steps))
        .collect();
    let max_sum = r_vals
        .iter()
        .zip(&b_vals)
        .map(|(r, b)| r + b)
        .max()
        .expect("k >= 1");
    let target = max_sum + 1;
    let g_vals: Vec<u64> = r_vals
        .iter()
        .zip(&b_vals)
        .map(|(r, b)| target - r - b)
        .collect();

    // Scatter the red and green columns with fresh permutations so that the
    // witness is generally non-trivial.
    let pi = random_permutation(k, &mut rng);
    let pi_prime = random_permutation(k, &mut rng);
    let mut r_out = vec![0u64; k];
    let mut g_out = vec![0u64; k];
    for i in 0..k {
        r_out[pi[i]] = r_vals[i];
        g_out[pi_prime[i]] = g_vals[i];
    }

    let inst = N3dmInstance::from_u64(&r_out, &b_vals, &g_out, target)?;
    let sol = N3dmSolution { pi, pi_prime };
    debug_assert!(check_solution(&inst, &sol).unwrap());
    Ok((inst, sol))
}

fn random_permutation(k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    // Fisher-Yates, spelled out so the byte-level output never depends on
    // the rand crate's shuffle implementation details.
    let mut perm: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn validate_accepts_known_good_instances() {
        N3dmInstance::from_u64(&[3], &[3], &[3], 9).unwrap();
        N3dmInstance::from_u64(&[1, 2], &[1, 2], &[3, 1], 5).unwrap();
    }

    #[test]
    fn validate_rejects_bad_sum_and_shape() {
        let err = N3dmInstance::from_u64(&[3], &[3], &[3], 10).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        let err = N3dmInstance::from_u64(&[1, 2], &[1], &[1, 1], 3).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        // zero values are rejected
        let err = N3dmInstance::from_u64(&[0, 2], &[1, 1], &[1, 1], 3).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn check_solution_examples() {
        let inst = N3dmInstance::from_u64(&[3], &[3], &[3], 9).unwrap();
        let sol = N3dmSolution { pi: vec![0], pi_prime: vec![0] };
        assert!(check_solution(&inst, &sol).unwrap());

        let inst = N3dmInstance::from_u64(&[1, 2], &[1, 2], &[3, 1], 5).unwrap();
        let identity = N3dmSolution { pi: vec![0, 1], pi_prime: vec![0, 1] };
        assert!(check_solution(&inst, &identity).unwrap());
        let swapped = N3dmSolution { pi: vec![1, 0], pi_prime: vec![0, 1] };
        assert!(!check_solution(&inst, &swapped).unwrap());

        // malformed solutions are errors, not "false"
        let bad = N3dmSolution { pi: vec![0, 0], pi_prime: vec![0, 1] };
        assert!(check_solution(&inst, &bad).is_err());
    }

    #[test]
    fn brute_force_finds_canonical_solution() {
        let inst = N3dmInstance::from_u64(&[1, 2], &[1, 2], &[3, 1], 5).unwrap();
        let sol = brute_force_solve(&inst).unwrap().unwrap();
        assert_eq!(sol.pi, vec![0, 1]);
        assert_eq!(sol.pi_prime, vec![0, 1]);
    }

    #[test]
    fn brute_force_reports_unsolvable() {
        // triple sums can only be 3 or 5, never 4
        let inst = N3dmInstance::from_u64(&[1, 3], &[1, 1], &[1, 1], 4).unwrap();
        assert!(brute_force_solve(&inst).unwrap().is_none());
    }

    #[test]
    fn brute_force_guard_trips() {
        let k = 11;
        let r = vec![1u64; k];
        let b = vec![1u64; k];
        let g = vec![1u64; k];
        let inst = N3dmInstance::from_u64(&r, &b, &g, 3).unwrap();
        assert!(matches!(
            brute_force_solve(&inst),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(brute_force_solve_with_limit(&inst, 11).unwrap().is_some());
    }

    #[test]
    fn strengthen_frozen_example() {
        let inst = N3dmInstance::from_u64(&[1, 2], &[1, 2], &[3, 1], 5).unwrap();
        let rec = strengthen(&inst).unwrap();
        assert_eq!(rec.c, 3);
        assert_eq!(rec.mu, 1);
        let s = &rec.strengthened;
        assert_eq!(s.r, vec![big(26), big(28)]);
        assert_eq!(s.b, vec![big(67), big(69)]);
        assert_eq!(s.g, vec![big(4102), big(4098)]);
        assert_eq!(s.target, big(4195));
        // spot-check the per-triple sums under the identity pairing
        assert_eq!(big(26) + big(67) + big(4102), big(4195));
        assert_eq!(big(28) + big(69) + big(4098), big(4195));
    }

    #[test]
    fn strengthen_band_bounds_hold_for_k_at_least_2() {
        for (k, seed) in [(2usize, 1u64), (3, 2), (4, 3), (5, 4)] {
            let (inst, _) = generate_yes_instance(k, seed, 9).unwrap();
            let rec = strengthen(&inst).unwrap();
            let kc = BigUint::from(k).pow(rec.c);
            let k2c = BigUint::from(k).pow(2 * rec.c);
            let k4c = BigUint::from(k).pow(4 * rec.c);
            let s = &rec.strengthened;
            for v in &s.r {
                assert!(*v >= big(3) * &kc && *v <= big(4) * &kc);
            }
            for v in &s.b {
                assert!(*v >= k2c && *v <= &k2c + &kc);
                assert!(v.is_odd());
            }
            for v in &s.g {
                assert!(*v >= k4c && *v <= &k4c + &kc);
            }
            // minimality of c
            if rec.c > 2 {
                let smaller = BigUint::from(k).pow(rec.c - 1);
                assert!(smaller < big(2) * inst.max_value() + big(2));
            }
        }
    }

    #[test]
    fn strengthen_preserves_solutions_for_odd_k() {
        // mu = 0 here; the target picks up +0, not +1, keeping the sum
        // identity intact.
        let inst = N3dmInstance::from_u64(&[2, 1, 3], &[3, 1, 1], &[1, 4, 2], 6).unwrap();
        let rec = strengthen(&inst).unwrap();
        assert_eq!(rec.mu, 0);
        validate_instance(&rec.strengthened).unwrap();
        let orig = brute_force_solve(&inst).unwrap();
        let strong = brute_force_solve(&rec.strengthened).unwrap();
        assert_eq!(orig.is_some(), strong.is_some());
        if let Some(sol) = orig {
            assert!(check_solution(&rec.strengthened, &sol).unwrap());
        }
    }

    #[test]
    fn strengthen_k1_uses_fallback_exponent() {
        let inst = N3dmInstance::from_u64(&[3], &[3], &[3], 9).unwrap();
        let rec = strengthen(&inst).unwrap();
        assert_eq!(rec.c, 2);
        assert_eq!(rec.mu, 0);
        validate_instance(&rec.strengthened).unwrap();
        let sol = N3dmSolution { pi: vec![0], pi_prime: vec![0] };
        assert!(check_solution(&rec.strengthened, &sol).unwrap());
    }

    #[test]
    fn strengthen_huge_values_exceed_u64() {
        // k = 2 with values near 2^40 forces k^4c beyond 64 bits.
        let v = 1u64 << 40;
        let inst = N3dmInstance::from_u64(&[v, v], &[v, v], &[v, v], 3 * v).unwrap();
        let rec = strengthen(&inst).unwrap();
        assert!(rec.strengthened.target > BigUint::from(u64::MAX));
        validate_instance(&rec.strengthened).unwrap();
        let identity = N3dmSolution { pi: vec![0, 1], pi_prime: vec![0, 1] };
        assert!(check_solution(&rec.strengthened, &identity).unwrap());
    }

    #[test]
    fn generator_is_deterministic_and_solvable() {
        for k in 1..=6 {
            for seed in 0..5 {
                let (inst, sol) = generate_yes_instance(k, seed, 9).unwrap();
                let (inst2, sol2) = generate_yes_instance(k, seed, 9).unwrap();
                assert_eq!(inst, inst2);
                assert_eq!(sol, sol2);
                assert!(check_solution(&inst, &sol).unwrap());
                assert!(inst.b.iter().all(|v| v.is_odd()));
                let bound = big(9);
                assert!(inst.max_value() <= bound);
            }
        }
    }

    #[test]
    fn generator_handles_tiny_bounds() {
        for bound in 1..=4 {
            let (inst, sol) = generate_yes_instance(3, 7, bound).unwrap();
            assert!(check_solution(&inst, &sol).unwrap());
            assert!(inst.max_value() <= big(bound));
        }
    }
}
