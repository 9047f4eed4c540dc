from .utils.susi import MeasureTime

__version__ = "0.1.0"
