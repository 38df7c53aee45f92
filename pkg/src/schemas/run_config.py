"""
Schema de configuración de una corrida del CLI.

Se alimenta de un archivo ``clave = valor`` (o de la salida JSON de una
corrida previa) más los overrides ``--set``. Valida qué combinaciones de
acoplamiento y temperaturas se dieron y construye los ``Setup`` de cada
punto de un barrido.
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config import settings
from enums import ScanAxis
from schemas.params import AsymmetryParams, BathParams, Setup, SpectralParams, SystemParams
from utils.grids import parse_grid


class RunConfig(BaseModel):
    """
    Configuración completa y determinista de una corrida.

    Acoplamientos: exactamente uno de {gamma1 + gamma2, lambda + asymmetry}.
    Temperaturas: exactamente uno de {T1 + T2, T_m + deltaT, T1 + r}.
    Los ejes de barrido reemplazan la cantidad que barren.
    """

    omega0: float = Field(default=1.0, gt=0.0)
    chi: float = Field(default=0.0, ge=0.0)
    eps: float = Field(default=0.1, gt=0.0, lt=1.0)

    gamma1: Optional[float] = Field(default=None, ge=0.0)
    gamma2: Optional[float] = Field(default=None, ge=0.0)
    lambda_: Optional[float] = Field(default=None, gt=0.0, alias="lambda")
    asymmetry: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    t1: Optional[float] = Field(default=None, gt=0.0, alias="T1")
    t2: Optional[float] = Field(default=None, gt=0.0, alias="T2")
    t_m: Optional[float] = Field(default=None, gt=0.0, alias="T_m")
    delta_t: Optional[float] = Field(default=None, alias="deltaT")
    r: Optional[float] = Field(default=None, gt=0.0, le=1.0)

    mu1: float = 0.0
    mu2: float = 0.0
    s: float = Field(default=1.0, ge=0.0)
    omega_c: float = Field(default=1000.0, gt=0.0)

    axis: Optional[ScanAxis] = None
    grid: Optional[List[float]] = None
    chis: Optional[List[float]] = None
    times: Optional[List[float]] = None
    initial_state: Literal["vacuum", "gibbs"] = "vacuum"
    gibbs_temperature: Optional[float] = Field(default=None, gt=0.0)
    n_max: Optional[int] = Field(default=None, ge=1)
    tol: float = Field(default_factory=lambda: settings.default_tol)

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    @field_validator("grid", "chis", "times", mode="before")
    @classmethod
    def parse_grids(cls, v):
        """
        Convierte las mallas escritas como texto en listas.

        Args:
            v: ``"a,b,c"``, ``"start:stop:num"``, ``"log:start:stop:num"`` o lista

        Returns:
            Lista de floats
        """
        if v is None:
            return v
        return parse_grid(v)

    @field_validator("tol")
    @classmethod
    def validate_tol(cls, v: float) -> float:
        """Valida que la tolerancia esté en (0, 1e-6]."""
        if not 0.0 < v <= 1e-6:
            raise ValueError("tol must lie in (0, 1e-6]")
        return v

    @model_validator(mode="after")
    def validate_combinations(self) -> "RunConfig":
        """
        Verifica las combinaciones exclusivas de acoplamiento y temperatura.

        Raises:
            ValueError: Si falta o sobra alguna especificación
        """
        self._check_axis()
        self._check_coupling()
        self._check_temperatures()
        return self

    def _check_axis(self) -> None:
        if self.axis is not None and not self.grid:
            raise ValueError(f"axis={self.axis.value} needs a nonempty grid")
        if self.axis is None and self.grid is not None:
            raise ValueError("grid given without an axis")
        if self.axis == ScanAxis.GAMMA and any(not 0.0 <= g <= 1.0 for g in self.grid):
            raise ValueError("gamma grid must lie in [0, 1]")
        if self.axis == ScanAxis.CHI and any(c < 0.0 for c in self.grid):
            raise ValueError("chi grid must be nonnegative")

    def _check_coupling(self) -> None:
        has_pair = self.gamma1 is not None or self.gamma2 is not None
        has_asymmetry = self.lambda_ is not None or self.asymmetry is not None

        if self.axis == ScanAxis.GAMMA:
            if has_pair or self.asymmetry is not None:
                raise ValueError("the gamma axis takes only lambda; gamma1/gamma2/asymmetry must be absent")
            if self.lambda_ is None:
                raise ValueError("the gamma axis requires lambda")
            return

        if has_pair and has_asymmetry:
            raise ValueError("give either gamma1/gamma2 or lambda/asymmetry, not both")
        if has_pair:
            if self.gamma1 is None or self.gamma2 is None:
                raise ValueError("gamma1 and gamma2 must be given together")
        elif has_asymmetry:
            if self.lambda_ is None or self.asymmetry is None:
                raise ValueError("lambda and asymmetry must be given together")
        else:
            raise ValueError("coupling missing: give gamma1/gamma2 or lambda/asymmetry")

    def _check_temperatures(self) -> None:
        if self.axis == ScanAxis.T1_OVER_OMEGA0:
            if self.r is None:
                raise ValueError("the T1_over_omega0 axis requires r")
            if any(v is not None for v in (self.t1, self.t2, self.t_m, self.delta_t)):
                raise ValueError("the T1_over_omega0 axis takes only r among temperatures")
            return
        if self.axis == ScanAxis.DELTA_T:
            if self.t_m is None:
                raise ValueError("the deltaT axis requires T_m")
            if any(v is not None for v in (self.t1, self.t2, self.delta_t, self.r)):
                raise ValueError("the deltaT axis takes only T_m among temperatures")
            return

        modes = [
            self.t2 is not None,
            self.t_m is not None or self.delta_t is not None,
            self.r is not None,
        ]
        if sum(modes) != 1:
            raise ValueError("give exactly one of T1/T2, T_m/deltaT or T1/r")
        if modes[0] and self.t1 is None:
            raise ValueError("T1 and T2 must be given together")
        if modes[1]:
            if self.t_m is None or self.delta_t is None:
                raise ValueError("T_m and deltaT must be given together")
            if self.t1 is not None:
                raise ValueError("T1 cannot be combined with T_m/deltaT")
        if modes[2] and self.t1 is None:
            raise ValueError("r requires T1")

    # ------------------------------------------------------------------
    # Construcción de Setup
    # ------------------------------------------------------------------

    @property
    def has_asymmetry(self) -> bool:
        """True si la corrida define (Λ, γ) y por lo tanto rectificación."""
        return self.lambda_ is not None

    def asymmetry_params(self, gamma: Optional[float] = None) -> AsymmetryParams:
        """(Λ, γ) de la corrida; ``gamma`` reemplaza la asimetría configurada."""
        gamma = self.asymmetry if gamma is None else gamma
        return AsymmetryParams(lambda_=self.lambda_, gamma=gamma)

    def _gammas(self, axis_value: Optional[float]) -> Tuple[float, float]:
        if self.axis == ScanAxis.GAMMA:
            return self.asymmetry_params(axis_value).gammas()
        if self.gamma1 is not None:
            return self.gamma1, self.gamma2
        return self.asymmetry_params().gammas()

    def _temperatures(self, axis_value: Optional[float], chi: float) -> Tuple[float, float]:
        if self.axis == ScanAxis.T1_OVER_OMEGA0:
            t1 = axis_value * (self.omega0 + chi)
            return t1, self.r * t1
        if self.axis == ScanAxis.DELTA_T:
            return self.t_m + 0.5 * axis_value, self.t_m - 0.5 * axis_value
        if self.t2 is not None:
            return self.t1, self.t2
        if self.t_m is not None:
            return self.t_m + 0.5 * self.delta_t, self.t_m - 0.5 * self.delta_t
        return self.t1, self.r * self.t1

    def setup_at(self, axis_value: Optional[float] = None, chi: Optional[float] = None) -> Setup:
        """
        Construye el Setup de un punto.

        Args:
            axis_value: Valor del eje de barrido (None para corridas simples)
            chi: Interacción que reemplaza a la configurada

        Returns:
            Setup validado

        Raises:
            ValidationError: Si el punto viola alguna invariante física
        """
        if chi is None:
            chi = axis_value if self.axis == ScanAxis.CHI else self.chi
        gamma1, gamma2 = self._gammas(axis_value)
        t1, t2 = self._temperatures(axis_value, chi)
        return Setup(
            system=SystemParams(omega0=self.omega0, chi=chi, eps=self.eps),
            bath1=BathParams(gamma=gamma1, temperature=t1, mu=self.mu1),
            bath2=BathParams(gamma=gamma2, temperature=t2, mu=self.mu2),
            spectral=SpectralParams(s=self.s, omega_c=self.omega_c),
        )

    def base_setup(self) -> Setup:
        """Setup de una corrida sin eje de barrido."""
        return self.setup_at()

    def resolved(self) -> dict:
        """Configuración completa para los metadatos de salida."""
        return self.model_dump(by_alias=True, exclude_none=True, mode="json")
