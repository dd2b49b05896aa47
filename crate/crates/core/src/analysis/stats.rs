//! One-way ANOVA and Student's t-tests.
//!
//! Tail probabilities use the regularized incomplete beta function:
//! `P(F > f) = I_{d2/(d2 + d1 f)}(d2/2, d1/2)` and the two-sided
//! `P(|T| > t) = I_{v/(v + t^2)}(v/2, 1/2)`.

use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (divisor `n - 1`); `None` for fewer than two values.
pub fn sample_std(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

fn sum_sq_dev(xs: &[f64], center: f64) -> f64 {
    xs.iter().map(|x| (x - center) * (x - center)).sum()
}

/// Upper tail of the F distribution.
pub fn f_sf(f: f64, df1: f64, df2: f64) -> f64 {
    if f.is_nan() {
        return f64::NAN;
    }
    if f <= 0.0 {
        return 1.0;
    }
    if f.is_infinite() {
        return 0.0;
    }
    beta_reg(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f))
}

/// Two-sided tail of Student's t distribution.
pub fn t_two_sided_p(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return 0.0;
    }
    beta_reg(df / 2.0, 0.5, df / (df + t * t))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTTest {
    pub group_a: String,
    pub group_b: String,
    pub t: f64,
    pub p: f64,
    pub df: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatTestResult {
    #[serde(rename = "F")]
    pub f: f64,
    pub p: f64,
    pub eta_squared: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub pairwise: Vec<PairwiseTTest>,
}

/// Equal-variance two-sample t-test of `a - b`. Returns `(t, p, df)`.
///
/// With zero pooled variance the statistic is 0 for equal means and
/// infinite otherwise.
pub fn student_t_test(a: &[f64], b: &[f64]) -> Result<(f64, f64, usize)> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidArgument(
            "t-test needs at least two observations per group".to_owned(),
        ));
    }
    let df = a.len() + b.len() - 2;
    let (ma, mb) = (mean(a), mean(b));
    let pooled = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / df as f64;
    let diff = ma - mb;
    let se = (pooled * (1.0 / a.len() as f64 + 1.0 / b.len() as f64)).sqrt();
    let t = if se == 0.0 {
        if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    } else {
        diff / se
    };
    Ok((t, t_two_sided_p(t, df as f64), df))
}

/// One-way ANOVA across named groups, with eta squared and all pairwise
/// Student's t-tests (in group order, `a` before `b`).
pub fn one_way_anova<S: AsRef<str>>(groups: &[(S, Vec<f64>)]) -> Result<StatTestResult> {
    if groups.len() < 2 {
        return Err(Error::InsufficientGroups(format!(
            "{} group(s); ANOVA needs at least 2",
            groups.len()
        )));
    }
    if let Some((name, _)) = groups.iter().find(|(_, xs)| xs.len() < 2) {
        return Err(Error::InsufficientGroups(format!(
            "group `{}` has fewer than 2 observations",
            name.as_ref()
        )));
    }
    let all: Vec<f64> = groups
        .iter()
        .flat_map(|(_, xs)| xs.iter().copied())
        .collect();
    let grand = mean(&all);
    let ss_total = sum_sq_dev(&all, grand);
    let ss_within: f64 = groups.iter().map(|(_, xs)| sum_sq_dev(xs, mean(xs))).sum();
    let ss_between: f64 = groups
        .iter()
        .map(|(_, xs)| {
            let d = mean(xs) - grand;
            xs.len() as f64 * d * d
        })
        .sum();

    let df_between = groups.len() - 1;
    let df_within = all.len() - groups.len();
    let ms_between = ss_between / df_between as f64;
    let ms_within = ss_within / df_within as f64;
    let f = if ss_between == 0.0 {
        0.0
    } else if ms_within == 0.0 {
        f64::INFINITY
    } else {
        ms_between / ms_within
    };
    let eta_squared = if ss_total == 0.0 {
        0.0
    } else {
        ss_between / ss_total
    };

    let mut pairwise = Vec::new();
    for (i, (name_a, a)) in groups.iter().enumerate() {
        for (name_b, b) in &groups[i + 1..] {
            let (t, p, df) = student_t_test(a, b)?;
            pairwise.push(PairwiseTTest {
                group_a: name_a.as_ref().to_owned(),
                group_b: name_b.as_ref().to_owned(),
                t,
                p,
                df,
            });
        }
    }

    Ok(StatTestResult {
        f,
        p: f_sf(f, df_between as f64, df_within as f64),
        eta_squared,
        df_between,
        df_within,
        pairwise,
    })
}
