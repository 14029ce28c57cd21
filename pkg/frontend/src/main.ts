import { GameApi } from "./api.js";
import { GameController } from "./app.js";
import { DomRenderer } from "./render.js";

function bootstrap(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const controller = new GameController(new GameApi(""), rendererProxy(), {
    pollMillis: 1000,
  });
  const renderer = new DomRenderer(root, {
    onVertexClick: (v) => void controller.chooseMove(v),
    onGameSelect: (name) => controller.selectGame(name),
    onNewGame: () => void controller.startGame(),
    onHint: () => void controller.requestHint(),
  });
  real = renderer;

  const humanSelect = document.getElementById("human-player") as HTMLSelectElement | null;
  humanSelect?.addEventListener("change", () => {
    controller.humanPlayer = Number(humanSelect.value);
  });
  const strategySelect = document.getElementById("engine-strategy") as HTMLSelectElement | null;
  strategySelect?.addEventListener("change", () => {
    controller.engineStrategy = strategySelect.value;
  });
  const ruleSelect = document.getElementById("rule-kind") as HTMLSelectElement | null;
  ruleSelect?.addEventListener("change", () => {
    controller.ruleKind = ruleSelect.value;
  });

  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLSelectElement) return;
    void controller.handleKey(event.key);
  });

  void controller.loadCorpus();
}

// the renderer needs controller callbacks and vice versa; proxy breaks the cycle
let real: DomRenderer | null = null;
function rendererProxy() {
  return {
    render: (view: Parameters<DomRenderer["render"]>[0]) => real?.render(view),
  };
}

bootstrap();
