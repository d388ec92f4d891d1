"""Model builders following the benchmark's layer tables.

Convolutions are unpadded ("valid") with biases, which reproduces the
published mixed-signal CNN parameter count exactly; the ResNet34 uses biased
convolutions, 3x3 projection shortcuts, and batch-norm moving statistics in
its count, again matching the published table. Recurrent models consume the
(2, L, 1) arrays transposed to L steps of 2 features.
"""

from __future__ import annotations

import keras
from keras import layers

ARCH_NAMES = ("cnn-single", "cnn-mixed", "lstm", "cldnn", "resnet34")

_RESNET_STAGES = ((64, 3), (128, 4), (256, 6), (512, 3))


def input_layout(name: str) -> str:
    """'image' for (2, L, 1) inputs, 'sequence' for (L, 2) inputs."""
    return "sequence" if name == "lstm" else "image"


def to_model_inputs(x, layout: str):
    """Adapt (N, 2, L, 1) AMCD arrays to the layout a model expects."""
    if layout == "image":
        return x
    if layout == "sequence":
        return x[:, :, :, 0].transpose(0, 2, 1)
    raise ValueError(f"unknown input layout {layout!r}")


def _mixed_conv_stack() -> list:
    return [
        layers.Conv2D(64, (2, 2), activation="relu"),
        layers.MaxPooling2D((1, 2)),
        layers.Conv2D(32, (1, 4), activation="relu"),
        layers.MaxPooling2D((1, 2)),
        layers.Conv2D(20, (1, 4), activation="relu"),
        layers.MaxPooling2D((1, 2)),
        layers.Conv2D(16, (1, 4), activation="relu"),
        layers.MaxPooling2D((1, 2)),
    ]


def _mixed_stack_width(L: int) -> int:
    w = L
    for kernel in (2, 4, 4, 4):
        w = w - kernel + 1
        if w < 1:
            return 0
        w //= 2
    return w


def build_cnn_single(n_classes: int = 4, L: int = 100) -> keras.Model:
    return keras.Sequential(
        [
            keras.Input((2, L, 1)),
            layers.Conv2D(64, (2, 4), activation="relu"),
            layers.Conv2D(16, (1, 4), activation="relu"),
            layers.Flatten(),
            layers.Dense(64, activation="relu"),
            layers.Dense(16, activation="relu"),
            layers.Dense(n_classes, activation="softmax"),
        ],
        name="cnn_single",
    )


def build_cnn_mixed(n_classes: int = 6, L: int = 100) -> keras.Model:
    if _mixed_stack_width(L) < 1:
        raise ValueError(f"L={L} is too short for the four conv/pool stages")
    return keras.Sequential(
        [keras.Input((2, L, 1))]
        + _mixed_conv_stack()
        + [
            layers.Flatten(),
            layers.Dense(256, activation="relu"),
            layers.Dense(64, activation="relu"),
            layers.Dense(16, activation="relu"),
            layers.Dense(n_classes, activation="softmax"),
        ],
        name="cnn_mixed",
    )


def build_lstm(n_classes: int = 6, L: int = 100) -> keras.Model:
    return keras.Sequential(
        [
            keras.Input((L, 2)),
            layers.LSTM(128, return_sequences=True),
            layers.LSTM(64, return_sequences=True),
            layers.LSTM(16, return_sequences=True),
            layers.Flatten(),
            layers.Dense(64, activation="relu"),
            layers.Dense(16, activation="relu"),
            layers.Dense(n_classes, activation="softmax"),
        ],
        name="lstm",
    )


def build_cldnn(n_classes: int = 6, L: int = 100) -> keras.Model:
    width = _mixed_stack_width(L)
    if width < 1:
        raise ValueError(f"L={L} is too short for the four conv/pool stages")
    return keras.Sequential(
        [keras.Input((2, L, 1))]
        + _mixed_conv_stack()
        + [
            # the conv output (1, width, 16) feeds the recurrent stack as a
            # width-step sequence of 16 features
            layers.Reshape((width, 16)),
            layers.LSTM(64, return_sequences=True),
            layers.LSTM(64, return_sequences=True),
            layers.Flatten(),
            layers.Dense(256, activation="relu"),
            layers.Dense(64, activation="relu"),
            layers.Dense(16, activation="relu"),
            layers.Dense(n_classes, activation="softmax"),
        ],
        name="cldnn",
    )


def _basic_block(x, filters: int, stride: int):
    shortcut = x
    y = layers.Conv2D(filters, 3, strides=stride, padding="same")(x)
    y = layers.BatchNormalization()(y)
    y = layers.ReLU()(y)
    y = layers.Conv2D(filters, 3, padding="same")(y)
    y = layers.BatchNormalization()(y)
    if stride != 1 or x.shape[-1] != filters:
        shortcut = layers.Conv2D(filters, 3, strides=stride, padding="same")(x)
        shortcut = layers.BatchNormalization()(shortcut)
    return layers.ReLU()(layers.Add()([y, shortcut]))


def build_resnet34(n_classes: int = 6, L: int = 100) -> keras.Model:
    inp = keras.Input((2, L, 1))
    x = layers.Conv2D(64, 7, strides=2, padding="same")(inp)
    x = layers.BatchNormalization()(x)
    x = layers.ReLU()(x)
    x = layers.MaxPooling2D(3, strides=2, padding="same")(x)
    for stage, (filters, blocks) in enumerate(_RESNET_STAGES):
        for b in range(blocks):
            stride = 2 if stage > 0 and b == 0 else 1
            x = _basic_block(x, filters, stride)
    x = layers.GlobalAveragePooling2D()(x)
    out = layers.Dense(n_classes, activation="softmax")(x)
    return keras.Model(inp, out, name="resnet34")


_BUILDERS = {
    "cnn-single": build_cnn_single,
    "cnn-mixed": build_cnn_mixed,
    "lstm": build_lstm,
    "cldnn": build_cldnn,
    "resnet34": build_resnet34,
}


def build(name: str, n_classes: int | None = None, L: int = 100) -> keras.Model:
    """Build one architecture by name; n_classes defaults per its table."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown architecture {name!r}; known: {', '.join(ARCH_NAMES)}")
    kwargs = {"L": L}
    if n_classes is not None:
        kwargs["n_classes"] = n_classes
    return _BUILDERS[name](**kwargs)
