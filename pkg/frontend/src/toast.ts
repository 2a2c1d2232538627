/** Transient error/info banners. */

export function showToast(message: string, kind: "error" | "info" = "info"): void {
  const host = document.getElementById("toasts");
  if (!host) return;
  const node = document.createElement("div");
  node.className = `toast toast-${kind}`;
  node.textContent = message;
  host.appendChild(node);
  setTimeout(() => node.remove(), kind === "error" ? 6000 : 3000);
}
