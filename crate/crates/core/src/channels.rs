//! Fixed channel layout of a recording: 2 affect, 31 visual, 65 vocal
//! channels and a 93-component verbal vector.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub const AFFECT_CHANNELS: usize = 2;
pub const VISUAL_CHANNELS: usize = 31;
pub const VOCAL_CHANNELS: usize = 65;
pub const VERBAL_COMPONENTS: usize = 93;

pub const VALENCE: &str = "valence";
pub const AROUSAL: &str = "arousal";

pub const AFFECT_NAMES: [&str; AFFECT_CHANNELS] = [VALENCE, AROUSAL];

/// Facial action unit intensities, gaze vectors/angles and head pose.
pub const VISUAL_NAMES: [&str; VISUAL_CHANNELS] = [
    "AU01_r",
    "AU02_r",
    "AU04_r",
    "AU05_r",
    "AU06_r",
    "AU07_r",
    "AU09_r",
    "AU10_r",
    "AU12_r",
    "AU14_r",
    "AU15_r",
    "AU17_r",
    "AU20_r",
    "AU23_r",
    "AU25_r",
    "AU26_r",
    "AU45_r",
    "gaze_0_x",
    "gaze_0_y",
    "gaze_0_z",
    "gaze_1_x",
    "gaze_1_y",
    "gaze_1_z",
    "gaze_angle_x",
    "gaze_angle_y",
    "pose_Tx",
    "pose_Ty",
    "pose_Tz",
    "pose_Rx",
    "pose_Ry",
    "pose_Rz",
];

/// Frame-level acoustic descriptors (energy, spectral, cepstral, voicing).
pub fn vocal_names() -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(VOCAL_CHANNELS);
    for s in ["audspec_lengthL1norm", "audspecRasta_lengthL1norm", "pcm_RMSenergy", "pcm_zcr"] {
        names.push(s.into());
    }
    for i in 0..26 {
        names.push(format!("audSpec_Rfilt[{i}]"));
    }
    for s in [
        "pcm_fftMag_fband250-650",
        "pcm_fftMag_fband1000-4000",
        "pcm_fftMag_spectralRollOff25.0",
        "pcm_fftMag_spectralRollOff50.0",
        "pcm_fftMag_spectralRollOff75.0",
        "pcm_fftMag_spectralRollOff90.0",
        "pcm_fftMag_spectralFlux",
        "pcm_fftMag_spectralCentroid",
        "pcm_fftMag_spectralEntropy",
        "pcm_fftMag_spectralVariance",
        "pcm_fftMag_spectralSkewness",
        "pcm_fftMag_spectralKurtosis",
        "pcm_fftMag_spectralSlope",
        "pcm_fftMag_psySharpness",
        "pcm_fftMag_spectralHarmonicity",
    ] {
        names.push(s.into());
    }
    for i in 1..=14 {
        names.push(format!("mfcc_sma[{i}]"));
    }
    for s in ["F0final", "voicingFinalUnclipped", "jitterLocal", "jitterDDP", "shimmerLocal", "logHNR"] {
        names.push(s.into());
    }
    debug_assert_eq!(names.len(), VOCAL_CHANNELS);
    names
}

pub fn verbal_names() -> Vec<String> {
    (0..VERBAL_COMPONENTS).map(|i| format!("verbal_{i:02}")).collect()
}
