//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

use std::process::{Command, ExitCode};

use vertco_core::linkbudget::Direction;
use vertco_core::sweep::{assign, parse_grid, BestQuery, Goal};
use vertco_core::*;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["vertco"];
    argv.extend_from_slice(args);
    let code = vertco_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr"),
    )
}

/// Data rows of a CSV report as (header, rows of cells).
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap_or_default()
        .split(',')
        .map(String::from)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Result<Vec<f64>, String> {
    let (header, rows) = csv_rows(text);
    let j = header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| format!("no column {name} in {header:?}"))?;
    rows.iter()
        .map(|r| r[j].parse::<f64>().map_err(|e| format!("{}: {e}", r[j])))
        .collect()
}

fn load(name: &str) -> Result<ScenarioDocument, String> {
    golden::load(name).map_err(|e| format!("{name}: {e}"))
}

fn metric(doc: &ScenarioDocument, m: Metric) -> Result<f64, String> {
    evaluate(doc)
        .and_then(|e| e.get(m))
        .map_err(|e| e.to_string())
}

fn with(doc: &ScenarioDocument, path: &str, value: &str) -> Result<ScenarioDocument, String> {
    let path: ParamPath = path.parse().map_err(|e: Error| e.to_string())?;
    let value: ParamValue = value.parse().map_err(|e: Error| e.to_string())?;
    assign(doc, &path, &value).map_err(|e| e.to_string())
}

fn strictly_less_by_1pct(a: f64, b: f64) -> bool {
    a < b && (b - a) >= 0.01 * b
}

/// Per-sector TCO ordering across splits on both uc1 goldens, plus the
/// shipped split7 file being the cheapest through the tco command.
fn criterion_1() -> Check {
    for name in ["uc1_megacity", "uc1_underserved"] {
        let (code, out, err) = cli(&[
            "sweep", "--scenario", name, "--param", "split", "--values", "dran,split2,split7",
            "--metric", "tco_per_sector",
        ]);
        ensure(code == 0, || format!("{name}: exit {code}: {err}"))?;
        let v = column(&out, "tco_per_sector")?;
        let (dran, s2, s7) = (v[0], v[1], v[2]);
        ensure(strictly_less_by_1pct(s7, s2) && strictly_less_by_1pct(s2, dran), || {
            format!("{name}: split7 {s7}, split2 {s2}, dran {dran}")
        })?;

        let (code, out, _) = cli(&["tco", "--scenario", name]);
        ensure(code == 0, || format!("{name}: tco exit {code}"))?;
        let (header, rows) = csv_rows(&out);
        let item = header.iter().position(|h| h == "item").ok_or("no item column")?;
        let value = header.iter().position(|h| h == "amount").ok_or("no amount column")?;
        let shipped: f64 = rows
            .iter()
            .find(|r| r[item] == "tco_per_sector")
            .ok_or("no tco_per_sector row")?[value]
            .parse()
            .map_err(|_| "bad number")?;
        ensure(shipped == v.iter().copied().fold(f64::INFINITY, f64::min), || {
            format!("{name}: shipped split is not the cheapest ({shipped} vs {v:?})")
        })?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let doc = load("uc9_emergency")?;
    for h in ["1", "5"] {
        let at = with(&doc, "horizon_years", h)?;
        let s2 = metric(&with(&at, "uc9.split", "split2")?, Metric::TcoTotal)?;
        let s7 = metric(&with(&at, "uc9.split", "split7")?, Metric::TcoTotal)?;
        ensure(s2 < s7, || format!("horizon {h}: split2 {s2} >= split7 {s7}"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let (code, out, err) = cli(&[
        "sweep", "--scenario", "uc9_emergency", "--param", "drones_per_link", "--values",
        "1,2,3,4,5,6,7,8,9,10", "--metric", "tco_total",
    ]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let k = column(&out, "drones_per_link")?;
    let t = column(&out, "tco_total")?;
    ensure(k == (1..=10).map(f64::from).collect::<Vec<_>>(), || format!("k column {k:?}"))?;
    ensure(t[..6].windows(2).all(|w| w[1] < w[0]), || format!("not decreasing on 1..6: {t:?}"))?;
    ensure(t[5..].windows(2).all(|w| w[1] > w[0]), || format!("not increasing on 6..10: {t:?}"))
}

fn uc4_body(doc: &ScenarioDocument) -> Result<&Uc4Scenario, String> {
    match &doc.body {
        ScenarioBody::Uc4(s) => Ok(s),
        _ => Err("not a uc4 scenario".into()),
    }
}

fn criterion_4() -> Check {
    let extreme = load("uc4_extreme_rural")?;
    let lb = &uc4_body(&extreme)?.linkbudget;
    ensure(
        lb.carrier_freq_mhz == 700.0
            && lb.mast_height_m == 108.0
            && lb.floors == 4
            && lb.sectors == 6
            && lb.mimo.dl_tx == 4
            && lb.mimo.dl_rx == 2,
        || "extreme-rural golden does not hold the reference configuration".into(),
    )?;
    let r = metric(&extreme, Metric::CoverageKm)?;
    ensure((70.0..=90.0).contains(&r), || format!("extreme rural r = {r} km"))?;

    let rural = load("uc4_rural")?;
    let lb = &uc4_body(&rural)?.linkbudget;
    ensure(
        lb.carrier_freq_mhz == 3500.0
            && (lb.mimo.dl_tx, lb.mimo.dl_rx, lb.mimo.ul_tx, lb.mimo.ul_rx) == (64, 2, 1, 64),
        || "rural golden does not hold the reference configuration".into(),
    )?;
    let r = metric(&rural, Metric::CoverageKm)?;
    ensure((12.0..=18.0).contains(&r), || format!("rural r = {r} km"))
}

fn criterion_5() -> Check {
    let doc = load("uc4_extreme_rural")?;
    let at = |path: &str, v: &str| -> Result<(f64, f64), String> {
        let d = with(&doc, path, v)?;
        Ok((metric(&d, Metric::CoverageKm)?, metric(&d, Metric::TcoPerKm2)?))
    };

    let heights: Vec<(f64, f64)> = ["60", "75", "108"]
        .iter()
        .map(|h| at("uc4.linkbudget.mast_height_m", h))
        .collect::<Result<_, _>>()?;
    ensure(
        heights.windows(2).all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1),
        || format!("(a) height series (r, tco/km2) {heights:?}"),
    )?;

    let floors: Vec<f64> = ["2", "3", "4"]
        .iter()
        .map(|f| at("uc4.linkbudget.floors", f).map(|x| x.1))
        .collect::<Result<_, _>>()?;
    ensure(floors.windows(2).all(|w| w[1] < w[0]), || format!("(b) floors {floors:?}"))?;
    let (_, ul2) = at("uc4.linkbudget.mimo.ul_rx", "2")?;
    let (_, ul4) = at("uc4.linkbudget.mimo.ul_rx", "4")?;
    ensure(ul4 < ul2, || format!("(b) ul_rx 2 -> 4: {ul2} -> {ul4}"))?;

    let (_, s3) = at("uc4.linkbudget.sectors", "3")?;
    let (_, s6) = at("uc4.linkbudget.sectors", "6")?;
    ensure(s6 < s3, || format!("(c) sectors 3 {s3}, 6 {s6}"))?;

    let base = uc4_body(&doc)?;
    let c0 = coverage(&base.linkbudget, &base.model).map_err(|e| e.to_string())?;
    ensure(c0.limiting_direction == Direction::Uplink, || "(d) not uplink-limited".into())?;
    let louder = with(
        &doc,
        "uc4.linkbudget.downlink.tx_power_dbm",
        &(base.linkbudget.downlink.tx_power_dbm + 3.0).to_string(),
    )?;
    let r0 = metric(&doc, Metric::CoverageKm)?;
    let r1 = metric(&louder, Metric::CoverageKm)?;
    ensure(r0.to_bits() == r1.to_bits(), || format!("(d) r changed {r0} -> {r1}"))?;
    let energy = |d: &ScenarioDocument| -> Result<f64, String> {
        let b = d.breakdown().map_err(|e| e.to_string())?;
        Ok(b.get("energy").ok_or("no energy item")?.amount.value())
    };
    let (e0, e1) = (energy(&doc)?, energy(&louder)?);
    ensure(e1 > e0, || format!("(d) energy opex {e0} -> {e1}"))
}

fn criterion_6() -> Check {
    let doc = load("uc3_paris")?;
    let ScenarioBody::Uc3(s) = &doc.body else {
        return Err("not a uc3 scenario".into());
    };
    let counts: Vec<u64> = s.population.anchors.iter().map(|a| a.device_count).collect();
    ensure(counts == [250_000, 650_000], || format!("Paris anchors {counts:?}"))?;
    ensure(s.profile.device_density_per_km2 == 1e6, || "target density is not 1e6/km2".into())?;

    let (code, out, err) = cli(&["mmtc", "--scenario", "uc3_paris"]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let (header, rows) = csv_rows(&out);
    let col = |n: &str| header.iter().position(|h| h == n).ok_or(format!("no {n} column"));
    let (tech, req, delta) = (col("technology")?, col("required_at_target")?, col("delta")?);
    for (name, lo, hi, max_delta) in [("nbiot", 1, 15, 6), ("ltem", 1, 3, 1)] {
        let mine: Vec<&Vec<String>> = rows.iter().filter(|r| r[tech] == name).collect();
        ensure(!mine.is_empty(), || format!("no {name} rows"))?;
        let required: Vec<i64> = mine.iter().map(|r| r[req].parse().unwrap_or(-1)).collect();
        ensure(required.iter().all(|n| (lo..=hi).contains(n)), || {
            format!("{name} required {required:?} outside [{lo}, {hi}]")
        })?;
        ensure(
            *required.iter().min().unwrap() == lo && *required.iter().max().unwrap() == hi,
            || format!("{name} required {required:?} does not span [{lo}, {hi}]"),
        )?;
        let deltas: Vec<i64> = mine.iter().map(|r| r[delta].parse().unwrap_or(i64::MAX)).collect();
        ensure(deltas.iter().all(|d| *d <= max_delta), || format!("{name} deltas {deltas:?}"))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    // closed-form free-space inversion
    for f in [700.0f64, 3500.0] {
        for i in 0..=1200 {
            let l = 60.0 + 0.1 * f64::from(i);
            let oracle = 10f64.powf((l - 32.44 - 20.0 * f.log10()) / 20.0);
            let d = invert_path_loss(&PropagationModel::FreeSpace, l, f, 30.0, 1.5)
                .map_err(|e| e.to_string())?
                .distance_km;
            ensure((d - oracle).abs() <= 1e-9 * oracle, || {
                format!("free space {l} dB @ {f} MHz: {d} vs {oracle}")
            })?;
        }
    }

    // smallest n with n x capacity >= density
    for capacity in 1..=100u32 {
        let row = CapacityRow {
            technology: Technology::NbIot,
            isd_label: "grid".into(),
            channel_label: "grid".into(),
            supported_density_per_resource: f64::from(capacity),
        };
        for density in 1..=10_000u32 {
            let profile = MtcProfile {
                payload_bytes: 32,
                period_s: 7200.0,
                device_density_per_km2: f64::from(density),
            };
            let mut n = 0;
            while n * capacity < density {
                n += 1;
            }
            let got = required_resources(Technology::NbIot, &profile, &row).map_err(|e| e.to_string())?;
            ensure(got == n, || format!("density {density} capacity {capacity}: {got} vs {n}"))?;
        }
    }

    // grid search against an independent exhaustive loop
    let doc = load("uc4_extreme_rural")?;
    let base = uc4_body(&doc)?.clone();
    let q = BestQuery::new(
        parse_grid(
            "linkbudget.mast_height_m=60,75,108;linkbudget.floors=2,3,4;\
             linkbudget.sectors=3,6;linkbudget.mimo.ul_rx=2,4",
        )
        .map_err(|e| e.to_string())?,
        Metric::CoverageKm,
        Goal::Max,
    );
    let best = best_configuration(&doc, &q).map_err(|e| e.to_string())?;

    let mut oracle: Option<((u32, f64, u32, u32), f64)> = None;
    // path order: floors, mast_height_m, mimo.ul_rx, sectors
    for floors in [2, 3, 4] {
        for h in [60.0, 75.0, 108.0] {
            for ul_rx in [2, 4] {
                for sectors in [3, 6] {
                    let mut lb = base.linkbudget;
                    lb.floors = floors;
                    lb.mast_height_m = h;
                    lb.mimo.ul_rx = ul_rx;
                    lb.sectors = sectors;
                    let r = coverage(&lb, &base.model).map_err(|e| e.to_string())?.r_km;
                    if oracle.is_none_or(|(_, b)| r > b) {
                        oracle = Some(((floors, h, ul_rx, sectors), r));
                    }
                }
            }
        }
    }
    let ((floors, h, ul_rx, sectors), r) = oracle.expect("non-empty grid");
    let expected = vec![
        ParamValue::Integer(i64::from(floors)),
        ParamValue::Integer(h as i64),
        ParamValue::Integer(i64::from(ul_rx)),
        ParamValue::Integer(i64::from(sectors)),
    ];
    let got: Vec<ParamValue> = best.assignment.iter().map(|(_, v)| v.clone()).collect();
    ensure(got == expected && best.value == r, || {
        format!("grid search {got:?} = {} vs oracle {expected:?} = {r}", best.value)
    })?;
    ensure((floors, h, ul_rx, sectors) == (4, 108.0, 4, 6), || {
        format!("best configuration {expected:?} is not (108 m, 4 floors, 6 sectors, 4 rx)")
    })
}

fn golden_cli_commands() -> Vec<Vec<&'static str>> {
    let mut cmds = Vec::new();
    for (name, _) in golden::ALL {
        cmds.push(vec!["validate", "--scenario", name]);
        for format in ["csv", "json"] {
            let mut per_case: Vec<Vec<&str>> = match &name[..3] {
                "uc1" => vec![
                    vec!["tco", "--scenario", name],
                    vec!["sweep", "--scenario", name, "--param", "split", "--values",
                         "dran,split2,split7", "--metric", "tco_per_sector,tco_per_km2"],
                ],
                "uc3" => vec![
                    vec!["mmtc", "--scenario", name],
                    vec!["sweep", "--scenario", name, "--param", "profile.device_density_per_km2",
                         "--values", "1000,100000,1000000", "--metric", "required_prbs,prb_delta"],
                ],
                "uc4" => vec![
                    vec!["tco", "--scenario", name, "--horizon", "5", "--rate", "0.08"],
                    vec!["coverage", "--scenario", name],
                    vec!["sweep", "--scenario", name, "--param", "linkbudget.mast_height_m",
                         "--values", "60,75,108", "--metric", "coverage_km,tco_per_km2",
                         "--metadata"],
                    vec!["best", "--scenario", name, "--grid",
                         "linkbudget.floors=2,4;linkbudget.sectors=3,6", "--objective",
                         "tco_per_km2", "--direction", "min"],
                    vec!["sensitivity", "--scenario", name, "--paths",
                         "linkbudget.mast_height_m,site_costs.mast_capex_per_m", "--metric",
                         "tco_per_km2"],
                ],
                _ => vec![
                    vec!["tco", "--scenario", name, "--horizon", "5"],
                    vec!["sweep", "--scenario", name, "--param", "drones_per_link", "--values",
                         "1,2,3,4,5,6,7,8,9,10", "--metric", "tco_total,drones_total"],
                ],
            };
            for c in &mut per_case {
                c.extend(["--format", format]);
            }
            cmds.extend(per_case);
        }
    }
    cmds
}

fn criterion_8() -> Check {
    for (name, _) in golden::ALL {
        let doc = load(name)?;
        let Ok(t) = doc.tco(doc.horizon_years, doc.discount_rate) else {
            continue;
        };
        let total = t.total.value();
        let sum: f64 = t.per_item.iter().map(|(_, a)| a.value()).sum();
        ensure((sum - total).abs() <= 1e-9 * total, || format!("{name}: items {sum} vs total {total}"))?;
        if let Some(n) = t.normalizers {
            let by_sector = n.per_sector * f64::from(n.sector_count);
            let by_area = n.per_km2 * n.area_km2;
            ensure(
                (by_sector - total).abs() <= 1e-9 * total && (by_area - total).abs() <= 1e-9 * total,
                || format!("{name}: normalizers {by_sector}, {by_area} vs {total}"),
            )?;
        }
    }

    let bin = env!("CARGO_BIN_EXE_vertco");
    for args in golden_cli_commands() {
        let run = || {
            Command::new(bin)
                .args(&args)
                .env_remove(golden::DIR_ENV)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || {
            format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr))
        })?;
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || {
            format!("{args:?} output differs between runs")
        })?;
        if args[0] == "validate" {
            ensure(a.stdout.is_empty(), || format!("{args:?} wrote to stdout"))?;
        }
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "format_version = \"1.0\"\nuse_case = = \"uc9\"\n").map_err(|e| e.to_string())?;
    let out = Command::new(bin)
        .args(["validate", "--scenario", bad.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(2) && out.stdout.is_empty(), || {
        format!("malformed file: exit {:?}, {} stdout bytes", out.status.code(), out.stdout.len())
    })
}

fn criterion_9() -> Check {
    for (name, _) in golden::ALL {
        let doc = load(name)?;
        let Ok(b) = doc.breakdown() else { continue };
        for h in [1u32, 5, 10] {
            let t = tco(&b, h, 0.0).map_err(|e| e.to_string())?;
            let expected = b.total_capex().value() + f64::from(h) * b.total_opex_per_year().value();
            ensure(t.total.value() == expected, || {
                format!("{name} H={h}: {} vs {expected}", t.total.value())
            })?;
        }
    }
    let b = CostBreakdown::new()
        .with_opex("opex", MoneyAmount::new(10.0).unwrap())
        .map_err(|e| e.to_string())?;
    let total = tco(&b, 2, 0.10).map_err(|e| e.to_string())?.total.value();
    let hand = 10.0 / 1.1 + 10.0 / 1.21;
    ensure(
        (total - 17.355371900826446).abs() <= 1e-12 && (total - hand).abs() <= 1e-12,
        || format!("worked example {total} vs 17.355371900826446"),
    )
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("uc1 split ordering", criterion_1),
        ("uc9 split ordering", criterion_2),
        ("uc9 sensitivity shape", criterion_3),
        ("uc4 coverage anchors", criterion_4),
        ("uc4 qualitative conclusions", criterion_5),
        ("uc3 ranges and delta", criterion_6),
        ("oracle equivalence", criterion_7),
        ("conservation and determinism", criterion_8),
        ("tco arithmetic", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
