# sample-size - Learning-curve extrapolation for annotation budget planning

__version__ = "0.1.0"
