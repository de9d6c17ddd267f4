# Tests for sample-size
