import random

import pytest
import torch

from cpplc_policy import Instance, PolicyConfig, PolicyNet, make_instance

FIG1_EDGES = [
    (1, 2, 2, 100),
    (2, 3, 1, 20),
    (1, 4, 1, 10),
    (3, 4, 10, 5),
]


@pytest.fixture(scope="session")
def fig1() -> Instance:
    return make_instance(4, FIG1_EDGES, W=0)


@pytest.fixture()
def tiny_model() -> PolicyNet:
    torch.manual_seed(7)
    model = PolicyNet(PolicyConfig(hidden=16, layers=2, heads=2, ff=32))
    model.eval()
    return model


def freeze_batchnorm_momentum(model: PolicyNet) -> None:
    for mod in model.modules():
        if isinstance(mod, torch.nn.BatchNorm1d):
            mod.momentum = 0.0


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(1234)
