//! Writes a demo 1D spectral sample file: the transform of the standard
//! smooth bump on [-1, 1], sampled on an interval window.

use illposed::bump::profile;
use illposed::io;
use illposed::quad::Panels;
use illposed::specext::{SpectralSamples, SpectralWindow};
use illposed::Complex64;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "samples.txt".into());
    let window = SpectralWindow::interval(-16.0, 16.0, 160, 10).unwrap();
    let fq = Panels::new(-1.0, 1.0, 24, 12);
    let samples = SpectralSamples::from_fn(window, |xi| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (y, w) in fq.iter() {
            acc += w * profile(y) * Complex64::cis(xi[0] * y);
        }
        acc
    });
    io::write_file(std::path::Path::new(&path), &io::samples_to_string(&samples, &[160, 10]))
        .unwrap();
    println!("wrote {path}");
}
