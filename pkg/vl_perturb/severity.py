# severity.py
# per-severity parameter tables for every visual perturbation.
# index 0 is severity 1, index 4 is severity 5.
#
# noise, blur, digital and temporal values are fixed by the benchmark
# protocol. zoom factors, camera angles and translation offsets are
# not fixed there and follow the usual image corruption settings.

from .helpers import validate_severity

GAUSSIAN_SIGMAS = (0.08, 0.12, 0.18, 0.26, 0.38)
SALT_PEPPER_AMOUNTS = (0.03, 0.06, 0.09, 0.17, 0.27)

# photon counts for the poisson variant of shot noise
SHOT_PHOTONS = (60, 25, 12, 5, 3)

MOTION_BLUR = ((10, 3), (15, 5), (15, 8), (15, 12), (20, 15))
DEFOCUS_BLUR = ((3, 0.1), (4, 0.5), (6, 0.5), (8, 0.5), (10, 0.5))
ZOOM_MAX_FACTORS = (1.11, 1.16, 1.21, 1.26, 1.31)
ZOOM_STEP = 0.01

ROTATE_DEGREES = (3, 6, 9, 12, 15)
TRANSLATE_FRACTIONS = (0.02, 0.04, 0.06, 0.08, 0.10)

JPEG_QUALITIES = (25, 18, 15, 10, 7)
MPEG1_LEVELS = (20, 40, 60, 80, 100)
MPEG2_LEVELS = (15, 30, 45, 60, 75)

SAMPLING_RATES = (2, 4, 8, 16, 32)
JUMBLE_SEGMENT_LENGTHS = (32, 16, 8, 4, 2)
BOX_JUMBLE_SEGMENT_COUNTS = (4, 9, 16, 25, 36)
FREEZE_FRACTIONS = (0.40, 0.20, 0.10, 0.05, 0.025)

SCHEDULES = {
  'gaussian': [{'sigma': s} for s in GAUSSIAN_SIGMAS],
  'shot': [{'amount': a, 'photons': p} for (a, p) in zip(SALT_PEPPER_AMOUNTS, SHOT_PHOTONS)],
  'impulse': [{'amount': a} for a in SALT_PEPPER_AMOUNTS],
  'speckle': [{'sigma': s} for s in GAUSSIAN_SIGMAS],
  'motion_blur': [{'radius': r, 'sigma': s} for (r, s) in MOTION_BLUR],
  'defocus_blur': [{'radius': r, 'alias': a} for (r, a) in DEFOCUS_BLUR],
  'zoom_blur': [{'max_factor': z, 'step': ZOOM_STEP} for z in ZOOM_MAX_FACTORS],
  'static_rotate': [{'degrees': d} for d in ROTATE_DEGREES],
  'rotate': [{'degrees': d} for d in ROTATE_DEGREES],
  'translate': [{'fraction': f} for f in TRANSLATE_FRACTIONS],
  'jpeg': [{'quality': q} for q in JPEG_QUALITIES],
  'mpeg1': [{'codec': 'mpeg2video', 'level': l} for l in MPEG1_LEVELS],
  'mpeg2': [{'codec': 'mpeg4', 'level': l} for l in MPEG2_LEVELS],
  'sampling': [{'rate': r} for r in SAMPLING_RATES],
  'reverse_sampling': [{'rate': r} for r in SAMPLING_RATES],
  'jumble': [{'segment_length': n} for n in JUMBLE_SEGMENT_LENGTHS],
  'box_jumble': [{'segment_count': n} for n in BOX_JUMBLE_SEGMENT_COUNTS],
  'freeze': [{'fraction': f} for f in FREEZE_FRACTIONS],
}

def severity_params(name, severity):
  if name not in SCHEDULES:
    raise ValueError(f"Unknown visual perturbation: {name}")
  severity = validate_severity(severity)
  return dict(SCHEDULES[name][severity - 1])
