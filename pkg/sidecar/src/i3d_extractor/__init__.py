"""Video embedding extractor sidecar.

Runs a 3-D action-recognition convnet over RVID video files and writes
the chosen activation layer (class logits or the last pooling layer) as
a REMB embedding file for the main toolkit to consume.
"""

from .extract import ExtractorConfig, MissingWeightsError, extract

__version__ = "0.1.0"
