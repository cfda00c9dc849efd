//! Affine maps `g(x) = μx + b` with `g(E) ⊆ E`: deciding whether a candidate
//! is one of the generating compositions `f_w`, or exhibiting a point of `E`
//! that `g` sends outside `E`.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::codings::{eval_coding, lambda_sample, EPCoding};
use crate::error::{Error, Result};
use crate::geometry::{compose_word, delta_level, holes, level_maps, map_for_digit, Beta};
use crate::interval::Interval;
use crate::map::AffineMap;
use crate::membership::{decide, Membership, DEFAULT_MAX_DEPTH};
use crate::scalar::fmt_rat;
use crate::symbolic::{Digit, Word};
use crate::Rat;

/// Default depth for [`classify_generating`].
pub const DEFAULT_CLASSIFY_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateMap {
    mu: Rat,
    b: Rat,
}

impl CandidateMap {
    pub fn new(mu: Rat, b: Rat) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::InvalidMu(fmt_rat(&mu)));
        }
        Ok(Self { mu, b })
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.mu * x + &self.b
    }

    pub fn as_map(&self) -> AffineMap {
        AffineMap::new(self.mu.clone(), self.b.clone()).expect("μ is nonzero")
    }
}

impl From<&AffineMap> for CandidateMap {
    fn from(m: &AffineMap) -> Self {
        Self {
            mu: m.scale().clone(),
            b: m.offset().clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefutationKind {
    /// `|μ| > 1`: the image of `Δ` is longer than `Δ`, so one endpoint of `Δ`
    /// is sent outside it.
    Diameter,
    /// A point of the witness net lands outside `E`.
    Witness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub kind: RefutationKind,
    /// A point of `E`.
    pub witness: EPCoding,
    pub point: Rat,
    /// `g(point)`, which is not in `E`.
    pub image: Rat,
    /// The hole of some `Δ_k`, `k ≤ max_depth`, containing the image; `None`
    /// when the image leaves `[0, γ]` or escapes only deeper.
    pub hole: Option<Interval>,
    /// First `k` with the image outside `Δ_k`.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyResult {
    /// `g = f_w`, `w` the lexicographically smallest such word. The empty
    /// word stands for the identity.
    Generating(Word),
    Refuted(Box<Refutation>),
    /// No witness found up to `depth`. `obstruction` records the first level
    /// `k` with `μΔ_k + b ⊄ Δ_k`, which every generating map satisfies but
    /// which on its own does not exhibit a point of `E` leaving `E`.
    Undetermined {
        depth: usize,
        obstruction: Option<usize>,
    },
}

impl ClassifyResult {
    pub fn is_generating(&self) -> bool {
        matches!(self, ClassifyResult::Generating(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ClassifyResult::Refuted(_))
    }
}

/// `w ∈ Ω^n` with `f_w(0) = b`, the lexicographically smallest if several
/// exist. Depth first over digits; the remainder `β^i b − Σ_{j≤i} w_j β^(i−j)`
/// must stay in `[0, γ]`.
pub fn digit_expand(beta: &Beta, b: &Rat, n: usize) -> Option<Word> {
    fn go(beta: &Beta, r: &Rat, left: usize, acc: &mut Vec<Digit>) -> bool {
        if left == 0 {
            return r.is_zero();
        }
        let scaled = r * beta.value();
        for d in Digit::ALL {
            let next = &scaled - beta.digit_value(d);
            if next.is_negative() || next > *beta.gamma() {
                continue;
            }
            acc.push(d);
            if go(beta, &next, left - 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    if b.is_negative() || b > beta.gamma() {
        return None;
    }
    let mut acc = Vec::with_capacity(n);
    go(beta, b, n, &mut acc).then_some(Word(acc))
}

/// The `n` with `μ = β^(−n)`, if `0 ≤ n ≤ max`.
fn scale_exponent(beta: &Beta, mu: &Rat, max: usize) -> Option<usize> {
    if !mu.is_positive() || *mu > Rat::one() {
        return None;
    }
    let mut p = Rat::one();
    for n in 0..=max {
        if p == *mu {
            return Some(n);
        }
        if p < *mu {
            return None;
        }
        p /= beta.value();
    }
    None
}

/// Open hole of `Δ_level` containing `x`, if `level ≤ limit`.
fn locate_hole(beta: &Beta, x: &Rat, level: usize, limit: usize) -> Option<Interval> {
    if level == 0 || level > limit {
        return None;
    }
    holes(beta, level).into_iter().find(|h| h.contains(x))
}

fn try_witness(
    beta: &Beta,
    g: &CandidateMap,
    x: &EPCoding,
    kind: RefutationKind,
    max_depth: usize,
) -> Option<Refutation> {
    let point = eval_coding(beta, x);
    let image = g.apply(&point);
    let d = decide(beta, &image, DEFAULT_MAX_DEPTH);
    (d.verdict == Membership::Out).then(|| Refutation {
        kind,
        witness: x.clone(),
        hole: locate_hole(beta, &image, d.level, max_depth),
        point,
        image,
        depth: d.level,
    })
}

/// Points of `E` in a fixed order: for `k = 0, 1, …`, the endpoints
/// `f_w(0)`, `f_w(γ)` of the distinct level-`k` maps by increasing word,
/// then the samples `Λ_{k,m}` for `m ≤ 2`. Repeats are skipped.
pub fn witness_net(beta: &Beta, max_depth: usize) -> Vec<EPCoding> {
    let mut seen = HashSet::new();
    let mut net = Vec::new();
    for k in 0..=max_depth {
        let mut words: Vec<Word> = level_maps(beta, k).into_iter().map(|m| m.word).collect();
        words.sort();
        let mut level: Vec<EPCoding> = Vec::new();
        for w in &words {
            level.push(EPCoding::left_end(w));
            level.push(EPCoding::right_end(w));
        }
        if k >= 1 {
            for m in 0..=2 {
                level.push(lambda_sample(k, m, None).expect("default prefix is valid"));
            }
        }
        for c in level {
            if seen.insert(c.clone()) {
                net.push(c);
            }
        }
    }
    net
}

/// Classifies `g`:
///
/// 1. `μ = β^(−n)` with `n ≤ max_depth` and `b = f_w(0)` for some `|w| = n`
///    gives `Generating(w)`.
/// 2. `|μ| > 1` is refuted at an endpoint of `Δ`.
/// 3. Otherwise the witness net up to `max_depth` is searched for a point
///    sent outside `E`.
/// 4. Failing that, the result is `Undetermined`.
pub fn classify_generating(beta: &Beta, g: &CandidateMap, max_depth: usize) -> ClassifyResult {
    if let Some(n) = scale_exponent(beta, g.mu(), max_depth) {
        if let Some(w) = digit_expand(beta, g.b(), n) {
            return ClassifyResult::Generating(w);
        }
    }
    if g.mu().abs() > Rat::one() {
        for end in [Digit::Zero, Digit::BetaPlusOne] {
            let c = EPCoding::constant(end);
            if let Some(r) = try_witness(beta, g, &c, RefutationKind::Diameter, max_depth) {
                return ClassifyResult::Refuted(Box::new(r));
            }
        }
        unreachable!("an interval longer than Δ cannot fit in Δ");
    }
    for c in witness_net(beta, max_depth) {
        if let Some(r) = try_witness(beta, g, &c, RefutationKind::Witness, max_depth) {
            return ClassifyResult::Refuted(Box::new(r));
        }
    }
    let map = g.as_map();
    let obstruction = (0..=max_depth).find(|&k| {
        let dk = delta_level(beta, k);
        !dk.contains_set(&dk.image(&map))
    });
    ClassifyResult::Undetermined {
        depth: max_depth,
        obstruction,
    }
}

/// Which first-level piece must contain `μE + b`, judged from the hull of
/// the image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchCase {
    SubF0,
    SubF1,
    SubFB,
    Inconclusive,
}

impl BranchCase {
    /// First digit of the generating word this case points to.
    pub fn digit(self) -> Option<Digit> {
        match self {
            BranchCase::SubF0 => Some(Digit::Zero),
            BranchCase::SubF1 => Some(Digit::One),
            BranchCase::SubFB => Some(Digit::BetaPlusOne),
            BranchCase::Inconclusive => None,
        }
    }
}

/// `SubF0` if `max < f_{10}(0) = 1/β`; `SubF1` if
/// `f_{01}(γ) = 2/(β(β−1)) < min < f_{β+1}(0)`; `SubFB` if `min > f_1(γ)`.
pub fn branch_classify(beta: &Beta, g: &CandidateMap) -> BranchCase {
    let a = g.b().clone();
    let c = g.apply(beta.gamma());
    let (min, max) = if a <= c { (a, c) } else { (c, a) };
    let f = |w: &str, x: &Rat| compose_word(beta, &w.parse().expect("literal word")).apply(x);
    let zero = Rat::zero();
    if max < f("10", &zero) {
        BranchCase::SubF0
    } else if f("01", beta.gamma()) < min && min < f("B", &zero) {
        BranchCase::SubF1
    } else if min > f("1", beta.gamma()) {
        BranchCase::SubFB
    } else {
        BranchCase::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymmetryWitness {
    pub witness: EPCoding,
    pub point: Rat,
    /// `c − point`, outside `E`.
    pub image: Rat,
}

/// A point `x ∈ E` with `c − x ∉ E`: `x = 0` when `c > γ`, `x = γ` when
/// `c < γ`, and `x = f_{1(β+1)}(0)` when `c = γ`, whose reflection lands in
/// the main hole.
pub fn check_asymmetry(beta: &Beta, c: &Rat, max_depth: usize) -> Result<AsymmetryWitness> {
    let witness = match c.cmp(beta.gamma()) {
        std::cmp::Ordering::Greater => EPCoding::constant(Digit::Zero),
        std::cmp::Ordering::Less => EPCoding::constant(Digit::BetaPlusOne),
        std::cmp::Ordering::Equal => {
            EPCoding::left_end(&Word(vec![Digit::One, Digit::BetaPlusOne]))
        }
    };
    let point = eval_coding(beta, &witness);
    let image = c - &point;
    match decide(beta, &image, max_depth) {
        d if d.verdict == Membership::Out => Ok(AsymmetryWitness {
            witness,
            point,
            image,
        }),
        d => Err(Error::AssertionFailure {
            n: d.level,
            what: format!(
                "reflection {} of {} is not shown outside E ({:?})",
                fmt_rat(&image),
                witness,
                d.verdict
            ),
        }),
    }
}

/// One level of the comparison between `L_n = f_0(Δ_n) ∩ f_1(Δ_n)` and
/// `R_n = f_{11}(Δ_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapLevel {
    pub n: usize,
    pub contained: bool,
    pub left_length: Rat,
    pub right_length: Rat,
    pub gap: Rat,
}

pub fn overlap_levels(beta: &Beta, max_n: usize) -> Vec<OverlapLevel> {
    let f0 = map_for_digit(beta, Digit::Zero);
    let f1 = map_for_digit(beta, Digit::One);
    let f11 = f1.compose(&f1);
    (0..=max_n)
        .map(|n| {
            let dn = delta_level(beta, n);
            let l = dn.image(&f0).intersection(&dn.image(&f1));
            let r = dn.image(&f11);
            let left_length = l.total_length();
            let right_length = r.total_length();
            OverlapLevel {
                n,
                contained: l.contains_set(&r),
                gap: &left_length - &right_length,
                left_length,
                right_length,
            }
        })
        .collect()
}

/// `3γβ^(−n−1)`, the bound the gap at level `n` is held to.
pub fn overlap_gap_bound(beta: &Beta, n: usize) -> Rat {
    Rat::from_integer(3.into()) * beta.gamma() * beta.inv_pow(n + 1)
}

/// Checks `R_n ⊆ L_n` for `n ≤ max_n`, that the length gap never grows, and
/// that the gap at `max_n` is at most [`overlap_gap_bound`]. Returns the
/// gaps, or the first failure.
pub fn verify_overlap_identity(beta: &Beta, max_n: usize) -> Result<Vec<Rat>> {
    let levels = overlap_levels(beta, max_n);
    for (i, lv) in levels.iter().enumerate() {
        if !lv.contained {
            return Err(Error::AssertionFailure {
                n: lv.n,
                what: "f_11(Δ_n) is not contained in f_0(Δ_n) ∩ f_1(Δ_n)".into(),
            });
        }
        if i > 0 && lv.gap > levels[i - 1].gap {
            return Err(Error::AssertionFailure {
                n: lv.n,
                what: format!(
                    "gap grew from {} to {}",
                    fmt_rat(&levels[i - 1].gap),
                    fmt_rat(&lv.gap)
                ),
            });
        }
    }
    let last = levels.last().expect("n = 0 is always present");
    let bound = overlap_gap_bound(beta, max_n);
    if last.gap > bound {
        return Err(Error::AssertionFailure {
            n: max_n,
            what: format!(
                "gap {} exceeds 3γβ^(−n−1) = {}",
                fmt_rat(&last.gap),
                fmt_rat(&bound)
            ),
        });
    }
    Ok(levels.into_iter().map(|l| l.gap).collect())
}

/// `x = f_{10}(β^(−2)) = 1/β + β^(−4)`, a point of `E` strictly inside
/// `H_0 = f_0(H) = ((γ+1)/β², (β+1)/β²)`. So `f_0` maps the main hole onto
/// an interval that is not a hole.
pub fn not_totally_self_similar_witness(beta: &Beta) -> Result<(Rat, Interval)> {
    let x = beta.inv_pow(1) + beta.inv_pow(4);
    let b2 = beta.value() * beta.value();
    let h0 = Interval::open(
        (beta.gamma() + Rat::one()) / &b2,
        (beta.value() + Rat::one()) / &b2,
    );
    if !h0.contains_in_interior(&x) {
        return Err(Error::AssertionFailure {
            n: 0,
            what: format!("{} not inside {}", fmt_rat(&x), h0),
        });
    }
    Ok((x, h0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::main_hole;
    use crate::make_beta;
    use crate::membership::decide_membership;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn g(mu: Rat, b: Rat) -> CandidateMap {
        CandidateMap::new(mu, b).unwrap()
    }

    #[test]
    fn expand_examples() {
        let b3 = make_beta(3, 1).unwrap();
        assert_eq!(digit_expand(&b3, &rat(1, 3), 1), Some("1".parse().unwrap()));
        assert_eq!(
            digit_expand(&b3, &rat(4, 9), 2),
            Some("0B".parse().unwrap())
        );
        for n in 0..=8 {
            assert_eq!(digit_expand(&b3, &rat(7, 6), n), None);
        }
        assert_eq!(digit_expand(&b3, &rat(0, 1), 0), Some(Word::empty()));
    }

    #[test]
    fn classify_examples() {
        let b3 = make_beta(3, 1).unwrap();
        assert_eq!(
            classify_generating(&b3, &g(rat(1, 3), rat(1, 3)), 8),
            ClassifyResult::Generating("1".parse().unwrap())
        );
        assert_eq!(
            classify_generating(&b3, &g(rat(1, 9), rat(4, 9)), 8),
            ClassifyResult::Generating("0B".parse().unwrap())
        );
        for (mu, b) in [
            (rat(1, 12), rat(1, 12)),
            (rat(-1, 3), rat(2, 3)),
            (rat(1, 2), rat(0, 1)),
        ] {
            let r = classify_generating(&b3, &g(mu.clone(), b.clone()), 8);
            let ClassifyResult::Refuted(r) = r else {
                panic!("({mu}, {b}) not refuted: {r:?}")
            };
            assert_eq!(decide_membership(&b3, &r.point, 40), Membership::In);
            assert_eq!(decide_membership(&b3, &r.image, 40), Membership::Out);
            assert_eq!(r.image, &mu * &r.point + &b);
        }
    }

    #[test]
    fn identity_and_degenerate_scales() {
        let b5 = make_beta(5, 1).unwrap();
        assert_eq!(
            classify_generating(&b5, &g(rat(1, 1), rat(0, 1)), 8),
            ClassifyResult::Generating(Word::empty())
        );
        assert!(matches!(
            CandidateMap::new(rat(0, 1), rat(1, 1)),
            Err(Error::InvalidMu(_))
        ));
        let ClassifyResult::Refuted(r) = classify_generating(&b5, &g(rat(2, 1), rat(0, 1)), 8)
        else {
            panic!()
        };
        assert_eq!(r.kind, RefutationKind::Diameter);
        assert_eq!(r.depth, 0);
        assert!(r.hole.is_none());
    }

    #[test]
    fn refutation_locates_hole() {
        let b5 = make_beta(5, 1).unwrap();
        // f_0 shifted so that the image of 0 is the middle of H
        let h = main_hole(&b5);
        let ClassifyResult::Refuted(r) = classify_generating(&b5, &g(rat(1, 5), h.midpoint()), 8)
        else {
            panic!()
        };
        assert_eq!(r.hole, Some(h));
        assert_eq!(r.depth, 1);
    }

    #[test]
    fn branch_examples() {
        let b3 = make_beta(3, 1).unwrap();
        assert_eq!(
            branch_classify(&b3, &g(rat(1, 9), rat(0, 1))),
            BranchCase::SubF0
        );
        assert_eq!(
            branch_classify(&b3, &g(rat(1, 9), rat(2, 3))),
            BranchCase::SubF1
        );
        assert_eq!(
            branch_classify(&b3, &g(rat(1, 9), rat(3, 2))),
            BranchCase::SubFB
        );
        assert_eq!(
            branch_classify(&b3, &g(rat(1, 1), rat(0, 1))),
            BranchCase::Inconclusive
        );
    }

    #[test]
    fn asymmetry_examples() {
        let b3 = make_beta(3, 1).unwrap();
        let w = check_asymmetry(&b3, &rat(0, 1), 40).unwrap();
        assert_eq!((w.point, w.image), (rat(2, 1), rat(-2, 1)));
        let w = check_asymmetry(&b3, &rat(2, 1), 40).unwrap();
        assert_eq!((w.point, w.image.clone()), (rat(7, 9), rat(11, 9)));
        assert!(main_hole(&b3).contains(&w.image));
        let b5 = make_beta(5, 1).unwrap();
        let w = check_asymmetry(&b5, &rat(3, 2), 40).unwrap();
        assert_eq!((w.point, w.image.clone()), (rat(11, 25), rat(53, 50)));
        assert!(main_hole(&b5).contains(&w.image));
    }

    #[test]
    fn overlap_first_level() {
        let b5 = make_beta(5, 1).unwrap();
        let l = &overlap_levels(&b5, 0)[0];
        assert!(l.contained);
        assert_eq!(l.left_length, rat(1, 10));
        assert_eq!(l.right_length, rat(3, 50));
        assert_eq!(l.gap, rat(1, 25));
        let b3 = make_beta(3, 1).unwrap();
        let l = &overlap_levels(&b3, 0)[0];
        assert_eq!(
            (l.left_length.clone(), l.right_length.clone()),
            (rat(1, 3), rat(2, 9))
        );
    }

    #[test]
    fn overlap_containment_and_monotone_gaps() {
        for (p, q) in [(3, 1), (7, 2), (5, 1)] {
            let b = make_beta(p, q).unwrap();
            let levels = overlap_levels(&b, 6);
            assert!(levels.iter().all(|l| l.contained));
            assert!(levels.windows(2).all(|w| w[1].gap <= w[0].gap));
        }
    }

    #[test]
    fn overlap_gap_decays_slower_than_the_bound() {
        // the gap shrinks roughly like (r_A/β)^n, not β^(−n)
        let b3 = make_beta(3, 1).unwrap();
        match verify_overlap_identity(&b3, 8) {
            Err(Error::AssertionFailure { n: 8, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_overlap_identity(&b3, 1).is_ok());
    }

    #[test]
    fn hole_image_contains_a_point_of_e() {
        for (p, q, x) in [(3, 1, rat(28, 81)), (5, 1, rat(126, 625))] {
            let b = make_beta(p, q).unwrap();
            let (pt, h0) = not_totally_self_similar_witness(&b).unwrap();
            assert_eq!(pt, x);
            assert_eq!(decide_membership(&b, &pt, 40), Membership::In);
            assert!(h0.contains_in_interior(&pt));
        }
        let b5 = make_beta(5, 1).unwrap();
        assert_eq!(
            not_totally_self_similar_witness(&b5).unwrap().1,
            Interval::open(rat(1, 10), rat(6, 25))
        );
    }
}
