from twocomp_ch.pytest.fixtures import *
