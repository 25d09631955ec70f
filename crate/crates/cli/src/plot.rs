//! CSV export of analysis reports: certificate curves, recovered atoms, and
//! support structures, ready for plotting.

use crate::pipeline::PipelineReport;
use minext::error::{Error, Result};
use minext::io::StructureJson;
use minext::torus::TorusPoint;
use minext::trig::TrigPolynomial;
use std::fmt::Write as _;
use std::path::Path;

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)
        .map_err(|e| Error::InvalidParameter(format!("writing {}: {e}", path.display())))
}

/// Writes `curve.csv`, `atoms.csv`, and `support.csv` into `out_dir`.
pub fn export_plot(report: &PipelineReport, out_dir: &Path, resolution: usize) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::InvalidParameter(format!("creating {}: {e}", out_dir.display())))?;

    let d = report.input.d;
    let cert_poly: Option<TrigPolynomial<f64>> = report
        .certificate
        .value()
        .and_then(|c| TrigPolynomial::try_from(&c.poly).ok());

    // certificate modulus and deficit along the torus
    let mut curve = String::new();
    match (&cert_poly, d) {
        (Some(poly), 1) => {
            curve.push_str("x,phi_re,phi_im,abs_phi,deficit\n");
            let deficit = minext::certificate::deficit(poly);
            for k in 0..resolution {
                let x = k as f64 / resolution as f64;
                let p = TorusPoint::new_1d(x);
                let v = poly.eval(&p);
                let _ = writeln!(
                    curve,
                    "{x},{},{},{},{}",
                    v.re,
                    v.im,
                    v.norm(),
                    deficit.eval_real(&p)
                );
            }
        }
        (Some(poly), 2) => {
            curve.push_str("x1,x2,abs_phi,deficit\n");
            let deficit = minext::certificate::deficit(poly);
            let n = resolution.min(256);
            for i in 0..n {
                for j in 0..n {
                    let p = TorusPoint::new(vec![i as f64 / n as f64, j as f64 / n as f64]);
                    let _ = writeln!(
                        curve,
                        "{},{},{},{}",
                        p.coords()[0],
                        p.coords()[1],
                        poly.eval(&p).norm(),
                        deficit.eval_real(&p)
                    );
                }
            }
        }
        _ => {
            curve.push_str("x,phi_re,phi_im,abs_phi,deficit\n");
        }
    }
    write_file(&out_dir.join("curve.csv"), &curve)?;

    // recovered atoms: the uniqueness measure when present, else the pruned
    // primal solution
    let mut atoms = String::new();
    let coord_header: String = (1..=d).map(|i| format!("x{i},")).collect();
    let _ = writeln!(atoms, "{coord_header}weight_re,weight_im,weight_abs");
    let measure = report
        .uniqueness
        .measure
        .clone()
        .filter(|m| !m.atoms.is_empty())
        .unwrap_or_else(|| report.primal_measure.clone());
    for a in &measure.atoms {
        let coords: String = a.x.iter().map(|c| format!("{c},")).collect();
        let _ = writeln!(
            atoms,
            "{coords}{},{},{}",
            a.re,
            a.im,
            (a.re * a.re + a.im * a.im).sqrt()
        );
    }
    write_file(&out_dir.join("atoms.csv"), &atoms)?;

    // the support structure, rendered by tag
    let mut support = String::new();
    match &report.structure {
        StructureJson::Points { points } => {
            let _ = writeln!(support, "{}", coord_header.trim_end_matches(','));
            for p in points {
                let row: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(support, "{}", row.join(","));
            }
        }
        StructureJson::Hyperplanes { reduced, .. } | StructureJson::Lattice { reduced, .. } => {
            // scatter of the certificate zero set when available, else the
            // constraint list
            if let (Some(poly), 2) = (&cert_poly, d) {
                let _ = writeln!(support, "x1,x2");
                for p in crate::pipeline::certificate_sieve(poly, 128, 1e-5) {
                    let _ = writeln!(support, "{},{}", p[0], p[1]);
                }
            } else {
                let _ = writeln!(support, "difference,offset");
                for h in reduced {
                    let diff: Vec<String> = h.difference.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(support, "{};{}", diff.join(";"), h.offset);
                }
            }
        }
        other => {
            let _ = writeln!(support, "tag");
            let tag = match other {
                StructureJson::WholeTorus => "whole_torus",
                StructureJson::UnknownAnalytic => "unknown_analytic",
                StructureJson::UnknownSingleton { .. } => "unknown_singleton",
                _ => unreachable!(),
            };
            let _ = writeln!(support, "{tag}");
        }
    }
    write_file(&out_dir.join("support.csv"), &support)?;
    Ok(())
}
