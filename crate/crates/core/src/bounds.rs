//! Closed-form bounds on `N(d, k, t)`, the least `n` such that every `n` points
//! in `R^d` admit a t-tolerant partition into `k` parts.
//!
//! Each rule applies only inside the hypotheses it was proved under. Tolerant
//! rules additionally need `k >= 2` and `t >= 1`; for `t = 0` only Tverberg's
//! theorem is reported.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// `(k-1)(d+1)+1`, upper bound for `t = 0`.
    Tverberg,
    /// `ceil(5d/3)+3` for `d >= 4, k = 2, t = 1`.
    RamirezAlfonsin,
    /// `2d+t+1` for `k = 2`.
    GarciaColinLarman,
    /// `k(t+floor(d/2)+1)`.
    Soberon,
    /// `k(t+2)+min(t, floor(k/2))` in the plane.
    PolygonFan,
    /// `2t+6` for `d = 2, k = 2, t >= 3`.
    ConvexPlusThree,
    /// `2t+7` for `d = 2, k = 2, 5 <= t <= 10`, from later computer search.
    ComputerSearch,
    /// `(k-1)(t+1)(d+1)+1`.
    SoberonStrausz,
    /// `2d+3` for `k = 2, t = 1`.
    Larman,
    /// `k(t+2)-1` on the line.
    MulzerStein,
    /// `2d+3` for `d <= 3, k = 2, t = 1`.
    LarmanExact,
    /// `11` for `d = 4, k = 2, t = 1`.
    ForgeLasVergnasSchuchert,
    /// `10` for `d = 2, k = 2, t = 2`.
    NinePointCertificate,
}

impl Rule {
    pub fn is_external(self) -> bool {
        self == Rule::ComputerSearch
    }

    pub fn formula(self) -> &'static str {
        match self {
            Rule::Tverberg => "(k-1)(d+1)+1",
            Rule::RamirezAlfonsin => "ceil(5d/3)+3, d>=4, k=2, t=1",
            Rule::GarciaColinLarman => "2d+t+1, k=2",
            Rule::Soberon => "k(t+floor(d/2)+1)",
            Rule::PolygonFan => "k(t+2)+min(t,floor(k/2)), d=2",
            Rule::ConvexPlusThree => "2t+6, d=2, k=2, t>=3",
            Rule::ComputerSearch => "2t+7, d=2, k=2, 5<=t<=10 (external citation)",
            Rule::SoberonStrausz => "(k-1)(t+1)(d+1)+1",
            Rule::Larman => "2d+3, k=2, t=1",
            Rule::MulzerStein => "k(t+2)-1, d=1",
            Rule::LarmanExact => "2d+3, d<=3, k=2, t=1",
            Rule::ForgeLasVergnasSchuchert => "11, d=4, k=2, t=1",
            Rule::NinePointCertificate => "10, d=2, k=2, t=2",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Tverberg => "Tverberg",
            Rule::RamirezAlfonsin => "Ramirez-Alfonsin",
            Rule::GarciaColinLarman => "Garcia-Colin-Larman",
            Rule::Soberon => "Soberon",
            Rule::PolygonFan => "polygon fan",
            Rule::ConvexPlusThree => "convex plus three",
            Rule::ComputerSearch => "computer search",
            Rule::SoberonStrausz => "Soberon-Strausz",
            Rule::Larman => "Larman",
            Rule::MulzerStein => "Mulzer-Stein",
            Rule::LarmanExact => "Larman",
            Rule::ForgeLasVergnasSchuchert => "Forge-Las Vergnas-Schuchert",
            Rule::NinePointCertificate => "nine-point certificate",
        };
        write!(f, "{name}: {}", self.formula())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u64,
    pub rule: Rule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundOptions {
    pub include_external: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            include_external: true,
        }
    }
}

pub fn tverberg_number(d: u64, k: u64) -> u64 {
    (k - 1) * (d + 1) + 1
}

/// The planar bound for a fixed `c`, defined when `k >= 2c` and `t >= c`.
pub fn polygon_fan_bound(k: u64, t: u64, c: u64) -> Option<u64> {
    (c >= 1 && k >= 2 * c && t >= c).then(|| k * (t + 2) + c)
}

fn tolerant(k: u64, t: u64) -> bool {
    k >= 2 && t >= 1
}

pub fn exact_value(d: u64, k: u64, t: u64) -> Option<Bound> {
    let b = |value, rule| Some(Bound { value, rule });
    if !tolerant(k, t) || d == 0 {
        return None;
    }
    match (d, k, t) {
        (1, _, _) => b(k * (t + 2) - 1, Rule::MulzerStein),
        (2..=3, 2, 1) => b(2 * d + 3, Rule::LarmanExact),
        (4, 2, 1) => b(11, Rule::ForgeLasVergnasSchuchert),
        (2, 2, 2) => b(10, Rule::NinePointCertificate),
        _ => None,
    }
}

/// Every applicable lower bound, exact values included.
pub fn lower_bounds(d: u64, k: u64, t: u64, opts: BoundOptions) -> Vec<Bound> {
    let mut out: Vec<Bound> = exact_value(d, k, t).into_iter().collect();
    if d == 0 || !tolerant(k, t) {
        return out;
    }
    let mut push = |applies: bool, value: u64, rule| {
        if applies {
            out.push(Bound { value, rule });
        }
    };
    push(
        d >= 4 && k == 2 && t == 1,
        (5 * d).div_ceil(3) + 3,
        Rule::RamirezAlfonsin,
    );
    push(k == 2, 2 * d + t + 1, Rule::GarciaColinLarman);
    push(true, k * (t + d / 2 + 1), Rule::Soberon);
    push(d == 2, k * (t + 2) + t.min(k / 2), Rule::PolygonFan);
    push(d == 2 && k == 2 && t >= 3, 2 * t + 6, Rule::ConvexPlusThree);
    push(
        opts.include_external && d == 2 && k == 2 && (5..=10).contains(&t),
        2 * t + 7,
        Rule::ComputerSearch,
    );
    out
}

/// Every applicable upper bound, exact values included.
pub fn upper_bounds(d: u64, k: u64, t: u64) -> Vec<Bound> {
    let mut out: Vec<Bound> = exact_value(d, k, t).into_iter().collect();
    if d == 0 || k == 0 {
        return out;
    }
    if t == 0 {
        out.push(Bound {
            value: tverberg_number(d, k),
            rule: Rule::Tverberg,
        });
        return out;
    }
    if k >= 2 {
        out.push(Bound {
            value: (k - 1) * (t + 1) * (d + 1) + 1,
            rule: Rule::SoberonStrausz,
        });
    }
    if k == 2 && t == 1 {
        out.push(Bound {
            value: 2 * d + 3,
            rule: Rule::Larman,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d: u64,
    pub k: u64,
    pub t: u64,
    /// Largest lower bound; the first rule wins ties.
    pub lower: Option<Bound>,
    /// Smallest upper bound; the first rule wins ties.
    pub upper: Option<Bound>,
    pub exact: Option<Bound>,
    pub lower_rules: Vec<Bound>,
    pub upper_rules: Vec<Bound>,
}

impl BoundReport {
    pub fn new(d: u64, k: u64, t: u64, opts: BoundOptions) -> Self {
        let lower_rules = lower_bounds(d, k, t, opts);
        let upper_rules = upper_bounds(d, k, t);
        let lower = lower_rules
            .iter()
            .copied()
            .reduce(|a, b| if b.value > a.value { b } else { a });
        let upper = upper_rules
            .iter()
            .copied()
            .reduce(|a, b| if b.value < a.value { b } else { a });
        BoundReport {
            d,
            k,
            t,
            lower,
            upper,
            exact: exact_value(d, k, t),
            lower_rules,
            upper_rules,
        }
    }

    /// The lower-bound counterpart for `P(d, k, t) = N(d, k, t) - kt`.
    pub fn excess_lower(&self) -> Option<u64> {
        self.lower.map(|b| b.value.saturating_sub(self.k * self.t))
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N({}, {}, {})", self.d, self.k, self.t)?;
        match self.exact {
            Some(b) => writeln!(f, "exact: {} [{}]", b.value, b.rule)?,
            None => writeln!(f, "exact: unknown")?,
        }
        match self.lower {
            Some(b) => writeln!(f, "lower: {} [{}]", b.value, b.rule)?,
            None => writeln!(f, "lower: none")?,
        }
        match self.upper {
            Some(b) => writeln!(f, "upper: {} [{}]", b.value, b.rule)?,
            None => writeln!(f, "upper: none")?,
        }
        for b in &self.lower_rules {
            writeln!(f, "  >= {:<4} {}", b.value, b.rule)?;
        }
        for b in &self.upper_rules {
            writeln!(f, "  <= {:<4} {}", b.value, b.rule)?;
        }
        Ok(())
    }
}
