from .noise import apply_noise
from .blur import apply_blur
from .camera import apply_camera
from .digital import apply_jpeg, apply_mpeg
from .temporal import TemporalPlan, plan_temporal, apply_temporal
from .video_perturber import VideoPerturber
