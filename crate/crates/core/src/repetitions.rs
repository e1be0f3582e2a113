//! Pinned repetition statistics on symbolic windows.
//!
//! For a two-sided sequence, the one sided statistic at shift `n` is
//! `1 + m/n` where `m` is the largest count of consecutive matches
//! `omega_k = omega_{k+n}` starting at `k = 1`; the two sided statistic
//! additionally requires the mirrored matches `omega_{n+1-k} = omega_{1-k}`.
//! The empty supremum counts as zero, so a first-comparison mismatch gives
//! the value 1.
//!
//! On a finite window the scan can be cut short by the window edge or by an
//! uncertified position; both cases are reported as censored, meaning the
//! true statistic is at least the reported value.

use crate::rat::Rat;
use crate::window::SymbolicWindow;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error("shift n = {n} exceeds window half width {half_width}")]
    WindowTooSmall { n: u64, half_width: usize },
    #[error("finite word length must be odd, got {0}")]
    EvenLength(usize),
    #[error("{0}")]
    Domain(String),
}

/// Value of `R_n` or `T_n` on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepStat {
    pub n: u64,
    /// Number of consecutive matches.
    pub m: u64,
    /// `1 + m/n` exactly.
    #[serde(with = "crate::rat::serde_pq")]
    pub value: Rat,
    /// True when the scan stopped at the window edge or an uncertified
    /// position rather than a definitive mismatch; the true statistic is
    /// then at least `value`.
    pub censored: bool,
}

impl RepStat {
    fn new(n: u64, m: u64, censored: bool) -> Self {
        let value = Rat::one() + Rat::new(BigInt::from(m), BigInt::from(n));
        RepStat { n, m, value, censored }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    OneSided,
    TwoSided,
}

/// One sided pinned repetition statistic `R_n` on the window.
pub fn r_n(w: &SymbolicWindow, n: u64) -> Result<RepStat, RepError> {
    scan(w, n, RepKind::OneSided)
}

/// Two sided pinned repetition statistic `T_n` on the window.
pub fn t_n(w: &SymbolicWindow, n: u64) -> Result<RepStat, RepError> {
    scan(w, n, RepKind::TwoSided)
}

fn scan(w: &SymbolicWindow, n: u64, kind: RepKind) -> Result<RepStat, RepError> {
    let half = w.half_width();
    if n == 0 {
        return Err(RepError::Domain("shift n must be >= 1".into()));
    }
    if n > half as u64 {
        return Err(RepError::WindowTooSmall { n, half_width: half });
    }
    let n_i = n as i64;
    // The right hand comparison (k, k+n) binds first: k <= W - n. The left
    // hand positions 1-k and n+1-k stay inside the window for those k.
    let k_max = half as i64 - n_i;
    let mut m = 0u64;
    for k in 1..=k_max {
        let right_ok = w.matches(k, k + n_i);
        let left_ok = match kind {
            RepKind::OneSided => true,
            RepKind::TwoSided => w.matches(n_i + 1 - k, 1 - k),
        };
        if right_ok && left_ok {
            m += 1;
            continue;
        }
        // A definitive mismatch needs both positions certified; anything
        // else is a certification boundary and censors the statistic.
        let definitive = mismatch_certain(w, k, k + n_i)
            || (kind == RepKind::TwoSided && mismatch_certain(w, n_i + 1 - k, 1 - k));
        return Ok(RepStat::new(n, m, !definitive));
    }
    // Ran out of window.
    Ok(RepStat::new(n, m, true))
}

fn mismatch_certain(w: &SymbolicWindow, a: i64, b: i64) -> bool {
    match (w.symbol(a), w.symbol(b)) {
        (Some(x), Some(y)) => x != y,
        _ => false,
    }
}

/// Repetition statistics over a range of shifts, with the running maximum.
#[derive(Clone, Debug)]
pub struct RepProfile {
    pub kind: RepKind,
    pub stats: Vec<RepStat>,
    /// Maximum value over the range; a certified lower bound for the
    /// limsup-type quantity when any contributing scan was censored.
    pub r_hat: Rat,
    pub argmax_n: u64,
    pub any_censored: bool,
}

impl RepProfile {
    /// CSV with header `n,m,value_num,value_den,censored`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,value_num,value_den,censored\n");
        for s in &self.stats {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.n,
                s.m,
                s.value.numer(),
                s.value.denom(),
                s.censored
            ));
        }
        out
    }
}

/// Default shift range `[1, W/4]`: leaves room for matches up to three
/// times the shift before the window edge censors.
pub fn default_shift_range(w: &SymbolicWindow) -> (u64, u64) {
    (1, (w.half_width() as u64 / 4).max(1))
}

pub fn profile(
    w: &SymbolicWindow,
    n_lo: u64,
    n_hi: u64,
    kind: RepKind,
) -> Result<RepProfile, RepError> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(RepError::Domain(format!("bad shift range [{n_lo}, {n_hi}]")));
    }
    let mut stats = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    for n in n_lo..=n_hi {
        stats.push(scan(w, n, kind)?);
    }
    let mut best = &stats[0];
    for s in &stats[1..] {
        if s.value > best.value {
            best = s;
        }
    }
    Ok(RepProfile {
        kind,
        r_hat: best.value.clone(),
        argmax_n: best.n,
        any_censored: stats.iter().any(|s| s.censored),
        stats,
    })
}

/// Two sided pinned value of a finite odd-length word, pinned at its
/// central symbol: writing the word as `omega_{1-c} .. omega_{1+c}` (the
/// center is `omega_1`), the value is the maximum over `1 <= n <= c` of
/// `1 + m_n/n`, where `m_n` counts the matches whose comparisons fit
/// entirely inside the word. No censoring: the supremum ranges over
/// fitting comparisons only.
pub fn t_finite_word<S: PartialEq>(word: &[S]) -> Result<Rat, RepError> {
    if word.len().is_multiple_of(2) {
        return Err(RepError::EvenLength(word.len()));
    }
    let c = (word.len() as i64 - 1) / 2;
    // omega_i = word[i + c - 1] for i in [1-c, 1+c].
    let at = |i: i64| &word[(i + c - 1) as usize];
    let mut best = Rat::one();
    for n in 1..=c {
        let k_max = c.min(c + 1 - n);
        let mut m = 0i64;
        for k in 1..=k_max {
            if at(k) == at(k + n) && at(n + 1 - k) == at(1 - k) {
                m += 1;
            } else {
                break;
            }
        }
        let value = Rat::one() + Rat::new(BigInt::from(m), BigInt::from(n));
        best = best.max(value);
    }
    Ok(best)
}

/// Exponent of an eventually periodic two-sided sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Finite(Rat),
    Infinite,
}

/// A two-sided eventually periodic sequence, reading left to right:
/// `... L L L [preperiod_left] [core] [preperiod_right] R R R ...`
/// where `L = period_left` and `R = period_right`. The core is centered on
/// the origin: it occupies positions `1 - ceil(|core|/2) ..= floor(|core|/2)`,
/// so with an empty core the right preperiod starts at position 1.
#[derive(Clone, Debug)]
pub struct EventuallyPeriodic<S> {
    pub period_left: Vec<S>,
    pub preperiod_left: Vec<S>,
    pub core: Vec<S>,
    pub preperiod_right: Vec<S>,
    pub period_right: Vec<S>,
}

impl<S: PartialEq + Clone> EventuallyPeriodic<S> {
    fn validate(&self) -> Result<(), RepError> {
        if self.period_left.is_empty() || self.period_right.is_empty() {
            return Err(RepError::Domain("period lists must be nonempty".into()));
        }
        Ok(())
    }

    fn core_lo(&self) -> i64 {
        1 - (self.core.len() as i64 + 1) / 2
    }

    fn core_hi(&self) -> i64 {
        self.core_lo() + self.core.len() as i64 - 1
    }

    /// First position of the pure right tail.
    fn right_tail_start(&self) -> i64 {
        self.core_hi() + self.preperiod_right.len() as i64 + 1
    }

    /// Last position of the pure left tail.
    fn left_tail_end(&self) -> i64 {
        self.core_lo() - self.preperiod_left.len() as i64 - 1
    }

    /// The symbol at any position of the bi-infinite sequence.
    pub fn symbol_at(&self, i: i64) -> &S {
        let core_lo = self.core_lo();
        let core_hi = self.core_hi();
        if !self.core.is_empty() && i >= core_lo && i <= core_hi {
            return &self.core[(i - core_lo) as usize];
        }
        if i > core_hi {
            let j = (i - core_hi - 1) as usize;
            if j < self.preperiod_right.len() {
                return &self.preperiod_right[j];
            }
            let p = self.period_right.len();
            return &self.period_right[(j - self.preperiod_right.len()) % p];
        }
        let j = (core_lo - 1 - i) as usize;
        if j < self.preperiod_left.len() {
            let len = self.preperiod_left.len();
            return &self.preperiod_left[len - 1 - j];
        }
        let p = self.period_left.len();
        let offset = (j - self.preperiod_left.len()) % p;
        &self.period_left[p - 1 - offset]
    }

    /// `omega_k = omega_{k+n}` for every `k >= start`. Checking through the
    /// finite central zone plus one full tail period suffices: beyond it
    /// both sides of the comparison reduce, by tail periodicity, to checked
    /// positions.
    fn periodic_from(&self, start: i64, n: i64) -> bool {
        let tail = self.right_tail_start().max(start);
        let upto = tail + n + self.period_right.len() as i64;
        (start..=upto).all(|k| self.symbol_at(k) == self.symbol_at(k + n))
    }

    /// `omega_k = omega_{k+n}` for every `k <= end - n` (global left side).
    fn periodic_to(&self, end: i64, n: i64) -> bool {
        let tail = self.left_tail_end().min(end);
        let downto = tail - n - self.period_left.len() as i64;
        (downto..=end - n).all(|k| self.symbol_at(k) == self.symbol_at(k + n))
    }
}

/// Exact one sided and two sided exponents of an eventually periodic
/// two-sided sequence.
///
/// For such sequences the exponents take only the extreme values: the one
/// sided exponent is infinite exactly when the ray `omega_1, omega_2, ...`
/// is periodic from its first symbol (for some period, and then for one at
/// most the right period by reduction), and is 1 otherwise, because for
/// every non-periodic shift the first mismatch sits within a bounded
/// distance of the origin, so `1 + m_n/n` tends to 1. The two sided
/// exponent is infinite exactly when the whole sequence is periodic.
/// Candidate periods up to twice the lcm of the two tail periods are
/// sufficient and are all tried.
pub fn exact_exponents_periodic<S: PartialEq + Clone>(
    seq: &EventuallyPeriodic<S>,
) -> Result<(Exponent, Exponent), RepError> {
    seq.validate()?;
    let lcm = (seq.period_left.len() as i64).lcm(&(seq.period_right.len() as i64));
    let mut r = Exponent::Finite(Rat::one());
    let mut t = Exponent::Finite(Rat::one());
    for n in 1..=2 * lcm {
        let right = seq.periodic_from(1, n);
        if right && r == Exponent::Finite(Rat::one()) {
            r = Exponent::Infinite;
        }
        if right && seq.periodic_to(0, n) {
            t = Exponent::Infinite;
            break;
        }
    }
    if r == Exponent::Infinite || t == Exponent::Infinite {
        // Global periodicity implies ray periodicity.
        if t == Exponent::Infinite {
            r = Exponent::Infinite;
        }
    }
    Ok((r, t))
}

/// One sided exponent of the sequence shifted left by `shift` (the pin
/// moves to position `shift`). Supports checking that shifting never
/// decreases the one sided exponent.
pub fn r_exponent_shifted<S: PartialEq + Clone>(
    seq: &EventuallyPeriodic<S>,
    shift: i64,
) -> Result<Exponent, RepError> {
    seq.validate()?;
    let lcm = (seq.period_left.len() as i64).lcm(&(seq.period_right.len() as i64));
    for n in 1..=2 * lcm {
        if seq.periodic_from(1 + shift, n) {
            return Ok(Exponent::Infinite);
        }
    }
    Ok(Exponent::Finite(Rat::one()))
}
