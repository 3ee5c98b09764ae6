//! The verbs.

use transfinite::series::{
    demo_transfinite, is_composition_series, jordan_holder_check, schreier_refine, validate_with_seed, zassenhaus,
    SeriesError, TransfiniteSeries,
};

use crate::job::{Job, NamedSeries, SeriesEntry};
use crate::report::{yes_no, Report};

/// An error that makes the run an input error (exit 2).
#[derive(Debug)]
pub struct InputError(pub String);

/// Whether `e` is a negative verdict on the input series rather than a
/// problem with the input itself.
fn is_verdict(e: &SeriesError) -> bool {
    matches!(
        e,
        SeriesError::Invalid(_) | SeriesError::NotComposition(_) | SeriesError::NotNormal(_) | SeriesError::NotSubgroup { .. }
    )
}

fn settle(mut report: Report, e: SeriesError) -> Result<Report, InputError> {
    if is_verdict(&e) {
        report.fail(e);
        Ok(report)
    } else {
        Err(InputError(e.to_string()))
    }
}

fn need_series(job: &Job, count: usize, verb: &str) -> Result<(), InputError> {
    if job.series.len() < count {
        let noun = if count == 1 { "series" } else { "series entries" };
        return Err(InputError(format!("{verb} needs {count} {noun}, the job has {}", job.series.len())));
    }
    Ok(())
}

/// The built series, or fails the report when a term was rejected.
fn built<'a>(report: &mut Report, s: &'a NamedSeries) -> Option<&'a TransfiniteSeries> {
    match &s.entry {
        SeriesEntry::Built(series) => Some(series),
        SeriesEntry::Rejected(reason) => {
            report.fail(format!("{}: {reason}", s.name));
            None
        }
    }
}

pub fn validate(job: &Job, seed: u64) -> Result<Report, InputError> {
    need_series(job, 1, "validate")?;
    let mut report = Report::new("validate");
    report.field("seed", seed);
    report.field("series", job.series.len());
    for (k, s) in job.series.iter().enumerate() {
        let key = format!("series.{}", k + 1);
        report.field(format!("{key}.name"), &s.name);
        let (valid, detail, length) = match &s.entry {
            SeriesEntry::Built(series) => {
                let checked = validate_with_seed(series, seed);
                (checked.is_valid(), checked.to_string(), series.length().to_string())
            }
            SeriesEntry::Rejected(reason) => (false, reason.clone(), "-".into()),
        };
        report.field(format!("{key}.length"), &length);
        report.field(format!("{key}.valid"), yes_no(valid));
        if valid {
            report.line(format!("{}: valid, length {length}", s.name));
        } else {
            report.field(format!("{key}.violations"), &detail);
            report.line(format!("{}: invalid: {detail}", s.name));
            report.holds = false;
        }
    }
    Ok(report)
}

pub fn refine(job: &Job) -> Result<Report, InputError> {
    need_series(job, 2, "refine")?;
    let mut report = Report::new("refine");
    let (Some(a), Some(b)) = (built(&mut report, &job.series[0]), built(&mut report, &job.series[1])) else {
        return Ok(report);
    };
    let r = match schreier_refine(a, b) {
        Ok(r) => r,
        Err(e) => return settle(report, e),
    };
    for (key, name, input, refined, quotient) in [
        ("first", &job.series[0].name, a, &r.refined_first, &r.first_quotient),
        ("second", &job.series[1].name, b, &r.refined_second, &r.second_quotient),
    ] {
        report.field(format!("{key}.length"), input.length());
        report.field(format!("{key}.refined"), refined);
        report.field(format!("{key}.refined_length"), refined.length());
        if let Some(q) = quotient {
            report.field(format!("{key}.order_type"), q.order_type());
        }
        report.line(format!("{name} (length {}) refines to {refined}", input.length()));
    }
    report.field("pairing", &r.pairing);
    report.line(format!("pairing: {}", r.pairing));
    report.field("factors", r.factor_table.len());
    for (k, entry) in r.factor_table.iter().enumerate() {
        let text = format!("{}->{}:{}", entry.first, entry.second, entry.factor);
        report.field(format!("factor.{}", k + 1), &text);
        report.line(format!("  factor {} ~ factor {}: {}", entry.first, entry.second, entry.factor));
    }
    Ok(report)
}

pub fn factors(job: &Job, seed: u64) -> Result<Report, InputError> {
    need_series(job, 1, "factors")?;
    let mut report = Report::new("factors");
    for (k, s) in job.series.iter().enumerate() {
        let key = format!("series.{}", k + 1);
        let Some(series) = built(&mut report, s) else {
            continue;
        };
        let checked = validate_with_seed(series, seed);
        if !checked.is_valid() {
            report.fail(format!("{}: {checked}", s.name));
            continue;
        }
        let composition = match is_composition_series(series) {
            Ok(c) => c,
            Err(e) => return settle(report, e),
        };
        let list = if composition.steps.is_empty() {
            match series.as_tower().map(|t| t.factor_label_counts()) {
                Some(Ok(counts)) => counts.iter().map(|(l, c)| format!("{l}:{c}")).collect::<Vec<_>>().join(","),
                Some(Err(e)) => return Err(InputError(e.to_string())),
                None => String::new(),
            }
        } else {
            composition.steps.iter().map(|s| s.factor.clone()).collect::<Vec<_>>().join(",")
        };
        report.field(format!("{key}.name"), &s.name);
        report.field(format!("{key}.composition"), yes_no(composition.is_composition));
        report.field(format!("{key}.factors"), &list);
        let mut line = format!(
            "{}: {} series; factors {list}",
            s.name,
            if composition.is_composition { "composition" } else { "non-composition" }
        );
        if let Some(step) = composition.first_failure() {
            report.field(format!("{key}.first_non_simple"), &step.index);
            line.push_str(&format!("; factor {} ({}) is not simple", step.index, step.factor));
        }
        report.line(line);
    }
    Ok(report)
}

pub fn jh_check(job: &Job) -> Result<Report, InputError> {
    need_series(job, 2, "jh-check")?;
    let mut report = Report::new("jh-check");
    let (Some(a), Some(b)) = (built(&mut report, &job.series[0]), built(&mut report, &job.series[1])) else {
        return Ok(report);
    };
    let v = match jordan_holder_check(a, b) {
        Ok(v) => v,
        Err(e) => return settle(report, e),
    };
    report.field("isomorphic", yes_no(v.isomorphic));
    report.field("factors", v.factor_list());
    report.field("first.length", &v.first_length);
    report.field("second.length", &v.second_length);
    report.field("lengths_equal", yes_no(v.lengths_equal()));
    report.field("cardinalities_equal", yes_no(v.cardinalities_equal()));
    report.field("refinements_fixed", yes_no(v.refinements_fixed));
    if let Some(p) = &v.pairing {
        report.field("pairing", p);
    }
    report.line(format!("isomorphic: {}; factors: {}", yes_no(v.isomorphic), v.factor_list()));
    report.line(format!("lengths: {} and {}", v.first_length, v.second_length));
    if !v.isomorphic {
        report.holds = false;
    }
    Ok(report)
}

pub fn zassenhaus_verb(job: &Job) -> Result<Report, InputError> {
    let Some(z) = &job.zassenhaus else {
        return Err(InputError("zassenhaus needs a [zassenhaus] section".into()));
    };
    let report = Report::new("zassenhaus");
    let result = match zassenhaus(&z.first_upper, &z.first_lower, &z.second_upper, &z.second_lower) {
        Ok(r) => r,
        Err(e) => return settle(report, e),
    };
    let mut report = report;
    for (key, group) in [
        ("first.upper", &result.upper1),
        ("first.lower", &result.lower1),
        ("second.upper", &result.upper2),
        ("second.lower", &result.lower2),
    ] {
        report.field(format!("{key}.order"), group.order());
    }
    let name = result.descriptor.name();
    let witness: Vec<String> = result.witness.iter().map(u32::to_string).collect();
    report.field("factor", &name);
    report.field("factor.order", result.first_factor.order());
    report.field("witness", witness.join(","));
    report.line(format!(
        "{}/{} ~ {}/{} ~ {name}",
        result.upper1.order(),
        result.lower1.order(),
        result.upper2.order(),
        result.lower2.order()
    ));
    report.line(format!("witness: coset k -> coset w[k], w = [{}]", witness.join(", ")));
    Ok(report)
}

pub fn demo() -> Result<Report, InputError> {
    let demo = demo_transfinite().map_err(|e| InputError(e.to_string()))?;
    let mut report = Report::new("demo-transfinite");
    for (key, series, checked) in [
        ("first", &demo.first, &demo.first_report),
        ("second", &demo.second, &demo.second_report),
    ] {
        report.field(key.to_string(), series);
        report.field(format!("{key}.length"), series.length());
        report.field(format!("{key}.valid"), yes_no(checked.is_valid()));
        report.line(format!("{key}: {series} ({checked})"));
    }
    let v = &demo.verdict;
    report.field("limit_check", yes_no(demo.limit_checked));
    report.field("isomorphic", yes_no(v.isomorphic));
    report.field("lengths_equal", yes_no(v.lengths_equal()));
    report.field("cardinalities_equal", yes_no(v.cardinalities_equal()));
    report.field("factors", v.factor_list());
    report.field("verdict", demo.summary());
    report.line(format!("union at w: {}", if demo.limit_checked { "holds" } else { "fails" }));
    report.line(format!("factors: {}", v.factor_list()));
    report.line(format!("verdict: {}", demo.summary()));
    report.holds = demo.passed();
    Ok(report)
}
