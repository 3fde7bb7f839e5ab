import init, { solve, exact, generate } from "./pkg/wvcp_web.js";

const $ = (id) => document.getElementById(id);
let points = null;

function status(text, error = false) {
  $("status").textContent = text;
  $("status").className = error ? "error" : "";
}

function layout(n) {
  if (points && points.length === n) return points;
  return Array.from({ length: n }, (_, i) => {
    const a = (2 * Math.PI * i) / n;
    return [0.5 + 0.45 * Math.cos(a), 0.5 + 0.45 * Math.sin(a)];
  });
}

function drawGraph(graph, colors) {
  const canvas = $("graph");
  const ctx = canvas.getContext("2d");
  const size = canvas.width;
  const pos = layout(graph.n).map(([x, y]) => [20 + x * (size - 40), 20 + y * (size - 40)]);
  const groups = colors ? Math.max(...colors) + 1 : 1;
  ctx.clearRect(0, 0, size, size);
  ctx.strokeStyle = "#bbb";
  ctx.lineWidth = 1;
  for (const [u, v] of graph.edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  const maxw = Math.max(...graph.weights);
  pos.forEach(([x, y], v) => {
    const r = 4 + 8 * (graph.weights[v] / maxw);
    ctx.beginPath();
    ctx.arc(x, y, r, 0, 2 * Math.PI);
    ctx.fillStyle = colors ? `hsl(${(360 * colors[v]) / groups}, 70%, 55%)` : "#888";
    ctx.fill();
    ctx.strokeStyle = "#333";
    ctx.stroke();
  });
}

function drawTrace(trace) {
  const canvas = $("trace");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  if (!trace || trace.length === 0) return;
  const tmax = Math.max(trace[trace.length - 1][0], 1e-3);
  const smin = trace[trace.length - 1][1];
  const smax = trace[0][1];
  const sx = (t) => 40 + (t / tmax) * (w - 50);
  const sy = (s) => (smax === smin ? h / 2 : 10 + ((smax - s) / (smax - smin)) * (h - 30));
  ctx.strokeStyle = "#1565c0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  trace.forEach(([t, s], i) => {
    if (i === 0) ctx.moveTo(sx(t), sy(s));
    else {
      ctx.lineTo(sx(t), sy(trace[i - 1][1]));
      ctx.lineTo(sx(t), sy(s));
    }
  });
  ctx.lineTo(sx(tmax), sy(smin));
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.fillText(String(smax), 4, sy(smax) + 4);
  ctx.fillText(String(smin), 4, sy(smin) + 4);
  ctx.fillText(`${tmax.toFixed(2)} s`, w - 50, h - 4);
}

function run(action) {
  try {
    action();
  } catch (e) {
    status(e.message ?? String(e), true);
  }
}

function onGenerate() {
  const out = JSON.parse(generate(+$("n").value, +$("radius").value, +$("maxw").value, +$("gseed").value));
  $("col").value = out.col;
  $("weights").value = out.weights;
  points = out.points;
  const edges = out.col
    .split("\n")
    .filter((l) => l.startsWith("e "))
    .map((l) => l.split(" ").slice(1).map((x) => x - 1));
  const weights = out.weights.trim().split("\n").map(Number);
  status(`generated ${points.length} vertices, ${edges.length} edges`);
  drawGraph({ n: points.length, edges, weights }, null);
  drawTrace(null);
}

function onSolve() {
  status("solving...");
  // let the status paint before the solver blocks the page
  setTimeout(() => run(() => {
    const out = JSON.parse(
      solve($("col").value, $("weights").value, $("method").value, +$("seed").value, +$("limit").value, +$("coef").value),
    );
    drawGraph(out.graph, out.colors);
    drawTrace(out.trace);
    status(
      `score ${out.score}${out.proven_optimal ? " (proven optimal)" : ""}, ` +
        `${Math.max(...out.colors) + 1} colors, ${out.iterations} iterations, ` +
        `best after ${out.time_to_best.toFixed(2)} s of ${out.total_time.toFixed(2)} s; ` +
        `reductions removed ${out.reduced_vertices} vertices`,
    );
  }), 10);
}

function onExact() {
  run(() => {
    const out = JSON.parse(exact($("col").value, $("weights").value));
    drawGraph(out.graph, out.colors);
    drawTrace(null);
    status(`optimum ${out.score} (${out.nodes_explored} search nodes)`);
  });
}

await init();
$("generate").onclick = () => run(onGenerate);
$("solve").onclick = onSolve;
$("exact").onclick = onExact;
$("col").oninput = () => (points = null);
run(onGenerate);
